//! Multivariate Hankel determinants and the determinantal monic polynomials of a
//! faithful state.
//!
//! For a target word `u` of length `n`, the frame `A_u` is the Gram matrix over all
//! words shorter than `u`, followed by `u` itself. From it:
//!
//! * `h_u = det A_u`,
//! * `𝔥_n` = the determinant with the `u` row and column removed (the Gram determinant
//!   of all words of length `< n`),
//! * `h_{v,u}` = the determinant with the `u` row replaced by `⟨x_v, x_w⟩`,
//! * `det M_u` = the determinant with the `u` row replaced by the monomials `x_w`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::mops::{same_length_pairs, MonicFamily, Verdict, Witness};
use crate::ncpoly::{enumerate_words, word_count, NcPolynomial, Word};
use crate::rational::Rational;
use crate::state::{gram_over, State};

#[derive(Debug, Clone, PartialEq)]
pub struct HankelFrame {
    target: Word,
    index: Vec<Word>,
    matrix: RatMatrix,
}

/// Dimension of `A_u` for `|u| = n`: `1 + d + ... + d^{n-1} + 1`.
pub fn frame_dimension(d: usize, n: usize) -> usize {
    if n == 0 {
        1
    } else {
        word_count(d, n - 1) + 1
    }
}

impl HankelFrame {
    pub fn target(&self) -> &Word {
        &self.target
    }

    /// Row/column labels; the target word is last.
    pub fn index(&self) -> &[Word] {
        &self.index
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    fn last(&self) -> usize {
        self.index.len() - 1
    }

    /// `h_u`.
    pub fn h(&self) -> Rational {
        self.matrix.determinant()
    }

    /// `𝔥_{|u|}` read off this frame.
    pub fn frak_h(&self) -> Rational {
        let l = self.last();
        self.matrix.minor(l, l).determinant()
    }

    /// `det M_u` by cofactor expansion along the target row.
    pub fn det_m(&self) -> NcPolynomial {
        let l = self.last();
        let d = self.target.d();
        let cofactors: Vec<Rational> = (0..self.index.len())
            .into_par_iter()
            .map(|c| {
                let minor = self.matrix.minor(l, c).determinant();
                if (l + c).is_multiple_of(2) {
                    minor
                } else {
                    -minor
                }
            })
            .collect();
        NcPolynomial::from_terms(d, self.index.iter().cloned().zip(cofactors)).expect("same alphabet")
    }
}

/// `A_u` in deg-lex order.
pub fn build_frame<S: State + ?Sized>(s: &S, u: &Word) -> Result<HankelFrame> {
    let lower = if u.is_empty() {
        Vec::new()
    } else {
        enumerate_words(s.d(), u.len() - 1)
    };
    build_frame_with_order(s, u, lower)
}

/// `A_u` with the shorter words laid out in the given order, which must list every word
/// of length `< |u|` exactly once.
pub fn build_frame_with_order<S: State + ?Sized>(s: &S, u: &Word, lower: Vec<Word>) -> Result<HankelFrame> {
    s.check_degree(2 * u.len())?;
    let mut sorted = lower.clone();
    sorted.sort();
    let expected = if u.is_empty() {
        Vec::new()
    } else {
        enumerate_words(s.d(), u.len() - 1)
    };
    if sorted != expected {
        return Err(Error::InvalidTable(format!(
            "frame order must list every word shorter than {u} exactly once"
        )));
    }
    let mut index = lower;
    index.push(u.clone());
    let matrix = gram_over(s, &index)?;
    Ok(HankelFrame {
        target: u.clone(),
        index,
        matrix,
    })
}

pub fn h<S: State + ?Sized>(s: &S, u: &Word) -> Result<Rational> {
    Ok(build_frame(s, u)?.h())
}

/// `𝔥_n`: Gram determinant of the words of length `< n`; `𝔥_0 = 1`.
pub fn frak_h<S: State + ?Sized>(s: &S, n: usize) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    Ok(s.gram_matrix(n - 1)?.determinant())
}

/// `h_{v,u}`: `A_u` with its `u` row replaced by `⟨x_v, x_w⟩`.
pub fn h_pair<S: State + ?Sized>(s: &S, v: &Word, u: &Word) -> Result<Rational> {
    let frame = build_frame(s, u)?;
    s.check_degree(v.len() + u.len())?;
    let row = frame
        .index
        .iter()
        .map(|w| s.inner_words(v, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(frame.matrix.with_row(frame.last(), &row).determinant())
}

pub fn det_m<S: State + ?Sized>(s: &S, u: &Word) -> Result<NcPolynomial> {
    Ok(build_frame(s, u)?.det_m())
}

/// `𝔥_1, ..., 𝔥_{n+1}` must all be nonzero, i.e. the Gram matrix of words of length `<= n`
/// is nonsingular. Returns `[𝔥_0, ..., 𝔥_n]`.
fn faithful_frak_hs<S: State + ?Sized>(s: &S, n: usize) -> Result<Vec<Rational>> {
    s.check_degree(2 * n)?;
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n + 1 {
        let fh = frak_h(s, m)?;
        if fh.is_zero() {
            return Err(Error::NotFaithful { degree: m - 1 });
        }
        if m <= n {
            out.push(fh);
        }
    }
    Ok(out)
}

/// `P_u = det M_u / 𝔥_{|u|}` for all words of length `<= n`.
///
/// Requires the state to be faithful up to degree `n`; otherwise reports the first
/// degree whose Gram matrix is singular.
pub fn hankel_family<S: State + ?Sized>(s: &S, n: usize) -> Result<MonicFamily> {
    let fhs = faithful_frak_hs(s, n)?;
    let mut polys = BTreeMap::new();
    for u in enumerate_words(s.d(), n) {
        let p = det_m(s, &u)?.scale(&(Rational::one() / &fhs[u.len()]));
        polys.insert(u, p);
    }
    MonicFamily::from_polys(s, n, polys)
}

/// Evaluates, for all `u ≠ w` with `|u| = |w| = m <= n`,
/// `⟨x_u, x_w⟩ = Σ_{|v| < m, h_v ≠ 0} h_{u,v} h_{w,v} / (h_v 𝔥_{|v|})`
/// with every quantity an explicit determinant. Witnesses carry `lhs - rhs`.
pub fn check_relation1<S: State + ?Sized>(s: &S, n: usize) -> Result<Verdict> {
    let fhs = faithful_frak_hs(s, n)?;
    if n == 0 {
        return Ok(Verdict::Holds);
    }
    let lower = enumerate_words(s.d(), n - 1);
    let hv: Vec<Rational> = lower.iter().map(|v| h(s, v)).collect::<Result<_>>()?;
    for (u, w) in same_length_pairs(s.d(), n) {
        let lhs = s.inner_words(&u, &w)?;
        let mut rhs = Rational::zero();
        for (v, h_v) in lower.iter().zip(&hv) {
            if v.len() >= u.len() || h_v.is_zero() {
                continue;
            }
            let num = h_pair(s, &u, v)? * h_pair(s, &w, v)?;
            rhs += num / (h_v * &fhs[v.len()]);
        }
        if lhs != rhs {
            return Ok(Verdict::Fails(Witness { u, w, value: lhs - rhs }));
        }
    }
    Ok(Verdict::Holds)
}
