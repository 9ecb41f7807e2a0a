//! Naive reference implementations for cross-checking: dense normal equations,
//! the one-variable three-term recursion, and Fock operators as explicit matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::FockData;
use crate::linalg::RatMatrix;
use crate::mops::MonicFamily;
use crate::ncpoly::{enumerate_words, words_of_length, NcPolynomial, Word};
use crate::rational::{is_negative, Rational};
use crate::state::{gram_over, State};

/// Solves `G c = b` by Gauss-Jordan elimination, setting free variables to zero.
/// Returns `None` when the system is inconsistent.
fn solve_skipping_dependent(g: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = g.rows();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = g.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(p) = (next..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    if rows[next..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][n].clone();
    }
    Some(x)
}

/// For each word `u` with `|u| <= n`, `x_u` minus its projection onto all lower-degree
/// monomials, from the full Gram system.
pub fn dense_orthogonalize<S: State + ?Sized>(s: &S, n: usize) -> Result<MonicFamily> {
    s.check_degree(2 * n)?;
    let d = s.d();
    let mut polys = Vec::new();
    polys.push((Word::empty(d), NcPolynomial::one(d)));
    for k in 1..=n {
        let lower = enumerate_words(d, k - 1);
        let g = gram_over(s, &lower)?;
        for u in words_of_length(d, k) {
            let b = lower.iter().map(|v| s.inner_words(v, &u)).collect::<Result<Vec<_>>>()?;
            let c = solve_skipping_dependent(&g, &b).expect("Gram systems are consistent");
            let mut p = NcPolynomial::monomial(u.clone());
            for (v, cv) in lower.iter().zip(&c) {
                p.add_term(v.clone(), -cv);
            }
            polys.push((u, p));
        }
    }
    MonicFamily::from_polys(s, n, polys.into_iter().collect())
}

/// One-variable recursion data: `x P_k = P_{k+1} + a_k P_k + b_k P_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiData {
    a: Vec<Rational>,
    b: Vec<Rational>,
}

impl JacobiData {
    /// `a = (a_0, ..., a_K)`, `b = (b_1, ..., b_K)`.
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() + 1 {
            return Err(Error::InvalidFockData(format!(
                "need one more diagonal entry than weights, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(bk) = b.iter().find(|x| is_negative(x)) {
            return Err(Error::InvalidFockData(format!("negative Jacobi weight {bk}")));
        }
        Ok(JacobiData { a, b })
    }

    pub fn depth(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn to_fock_data(&self) -> FockData {
        FockData::from_jacobi(&self.a, &self.b).expect("lengths already checked")
    }

    fn matrix(&self) -> RatMatrix {
        let n = self.a.len();
        RatMatrix::from_fn(n, n, |r, c| {
            if r == c {
                self.a[r].clone()
            } else if r == c + 1 {
                Rational::one()
            } else if c == r + 1 {
                self.b[r].clone()
            } else {
                Rational::zero()
            }
        })
    }
}

/// `m_0, ..., m_m` as `(J^k)_{00}` for the truncated Jacobi matrix.
pub fn jacobi_moments(j: &JacobiData, m: usize) -> Result<Vec<Rational>> {
    let bound = 2 * j.depth() + 1;
    if m > bound {
        return Err(Error::DegreeExceedsBound { degree: m, bound });
    }
    let jm = j.matrix();
    let mut power = RatMatrix::identity(jm.rows());
    let mut out = Vec::with_capacity(m + 1);
    for _ in 0..=m {
        out.push(power[(0, 0)].clone());
        power = power.mul(&jm);
    }
    Ok(out)
}

/// `P_0, ..., P_n` from the three-term recursion.
pub fn jacobi_polynomials(j: &JacobiData, n: usize) -> Result<Vec<NcPolynomial>> {
    if n > j.depth() + 1 {
        return Err(Error::DepthExceeded {
            level: n,
            depth: j.depth() + 1,
        });
    }
    let mut out = vec![NcPolynomial::one(1)];
    for k in 0..n {
        let mut next = out[k].left_mul_var(1);
        next.add_scaled(&-&j.a[k], &out[k]);
        if k > 0 {
            next.add_scaled(&-&j.b[k - 1], &out[k - 1]);
        }
        out.push(next);
    }
    Ok(out)
}

/// Fock operators as explicit matrices on levels `0..=depth`, basis in deg-lex order.
/// Creation out of the top level is dropped.
pub struct DenseFock<'a> {
    data: &'a FockData,
    basis: Vec<Word>,
}

impl<'a> DenseFock<'a> {
    pub fn new(data: &'a FockData) -> Self {
        DenseFock {
            data,
            basis: enumerate_words(data.d(), data.depth()),
        }
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    fn build(&self, mut f: impl FnMut(&Word, &Word) -> Rational) -> RatMatrix {
        let n = self.basis.len();
        RatMatrix::from_fn(n, n, |r, c| f(&self.basis[r], &self.basis[c]))
    }

    /// Diagonal `K_C`, each entry an explicit product over suffixes.
    pub fn kernel(&self) -> RatMatrix {
        self.build(|w, u| {
            if w != u {
                return Rational::zero();
            }
            let mut acc = Rational::one();
            for j in 0..u.len() {
                let suffix = Word::new(u.d(), u.letters()[j..].to_vec()).expect("valid");
                acc *= self.data.c_value(&suffix);
            }
            acc
        })
    }

    pub fn creation(&self, i: usize) -> RatMatrix {
        let depth = self.data.depth();
        self.build(|w, u| {
            let hit = u.len() < depth && w.len() == u.len() + 1 && w.letters()[0] == i && w.letters()[1..] == *u.letters();
            if hit {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Unweighted `a_i⁻`.
    pub fn annihilation(&self, i: usize) -> RatMatrix {
        self.creation(i).transpose()
    }

    /// `ã_i⁻ = a_i⁻ C`.
    pub fn annihilation_tilde(&self, i: usize) -> RatMatrix {
        self.build(|w, u| {
            if !u.is_empty() && u.letters()[0] == i && w.letters() == &u.letters()[1..] {
                self.data.c_value(u).clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn t(&self, i: usize) -> RatMatrix {
        self.build(|w, u| {
            if w.len() == u.len() {
                self.data.t_matrix(i, u.len())[(w.level_index(), u.level_index())].clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn x(&self, i: usize) -> RatMatrix {
        let a = self.creation(i);
        let t = self.t(i);
        let b = self.annihilation_tilde(i);
        RatMatrix::from_fn(a.rows(), a.cols(), |r, c| &a[(r, c)] + &t[(r, c)] + &b[(r, c)])
    }

    /// `⟨Ω, X_{u(1)} ... X_{u(k)} Ω⟩_C` by dense matrix-vector products.
    pub fn moment(&self, u: &Word) -> Result<Rational> {
        let bound = self.data.moment_bound();
        if u.len() > bound {
            return Err(Error::DegreeExceedsBound { degree: u.len(), bound });
        }
        let xs: Vec<RatMatrix> = (1..=self.data.d()).map(|i| self.x(i)).collect();
        let n = self.basis.len();
        let mut v = vec![Rational::zero(); n];
        // Ω comes first in deg-lex order
        v[0] = Rational::one();
        for &l in u.letters().iter().rev() {
            let m = &xs[l - 1];
            v = (0..n)
                .map(|r| (0..n).fold(Rational::zero(), |acc, c| acc + &m[(r, c)] * &v[c]))
                .collect();
        }
        Ok(v[0].clone())
    }
}
