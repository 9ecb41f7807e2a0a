//! Monic orthogonal polynomial systems for states on the free algebra `ℝ⟨x_1, ..., x_d⟩`.
//!
//! A state is presented by its moments ([`MomentTable`]) or by Fock data ([`FockState`]).
//! [`has_mops`] decides whether the Gram-Schmidt family is orthogonal; for such states
//! [`extract_recursion`] reads off the recursion coefficients and [`extract_fock_data`]
//! a Fock space representation that reproduces the moments. [`hankel`] gives the same
//! family through determinants. All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod fock;
pub mod hankel;
pub mod io;
pub mod linalg;
pub mod mops;
pub mod ncpoly;
#[doc(hidden)]
pub mod oracle;
pub mod rational;
pub mod state;

pub use error::{Error, Result};
pub use fock::{extract_fock_data, mops_vectors, validate_fock_data, FockData, FockState, FockVector, FockViolation};
pub use hankel::{check_relation1, frak_h, hankel_family};
pub use linalg::{Definiteness, RatMatrix};
pub use mops::{
    check_relation0, extract_recursion, gram_schmidt, has_mops, verify_recursion, MonicFamily, RecursionCoefficients,
    Verdict, Witness,
};
pub use ncpoly::{enumerate_words, words_of_length, NcPolynomial, Word};
pub use rational::{int, rat, Rational};
pub use state::{check_state, MomentTable, State, StateViolation};
