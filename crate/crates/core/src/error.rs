use thiserror::Error;

use crate::mops::Witness;
use crate::rational::format_rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("letter {letter} is outside the alphabet 1..={d}")]
    LetterOutOfRange { letter: usize, d: usize },

    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("degree {degree} exceeds the valid bound {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },

    #[error("level {level} exceeds the Fock depth {depth}")]
    DepthExceeded { level: usize, depth: usize },

    /// Carries the first non-orthogonal pair.
    #[error("family is not orthogonal: <P_{}, P_{}> = {}", .0.u, .0.w, format_rational(&.0.value))]
    NotOrthogonal(Box<Witness>),

    #[error("state is not faithful: the Gram matrix of words of length <= {degree} is singular")]
    NotFaithful { degree: usize },

    #[error("recursion check failed: {0}")]
    RecursionViolation(String),

    #[error("invalid moment table: {0}")]
    InvalidTable(String),

    #[error("invalid Fock data: {0}")]
    InvalidFockData(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
