//! Dense exact rational matrices: fraction-free determinants and a
//! certificate-producing symmetric LDLᵀ definiteness test.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Panics unless every row has the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix rows");
        RatMatrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> RatMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        RatMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn with_row(&self, r: usize, row: &[Rational]) -> RatMatrix {
        assert_eq!(row.len(), self.cols);
        let mut m = self.clone();
        m.data[r * self.cols..(r + 1) * self.cols].clone_from_slice(row);
        m
    }

    pub fn quadratic_form(&self, x: &[Rational]) -> Rational {
        assert!(self.is_square() && x.len() == self.rows);
        let mut acc = Rational::zero();
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (c, xc) in x.iter().enumerate() {
                if !xc.is_zero() {
                    acc += xr * &self[(r, c)] * xc;
                }
            }
        }
        acc
    }

    /// Exact determinant. Rows are first scaled to integers, then reduced with
    /// Bareiss' fraction-free elimination; the empty matrix has determinant 1.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let row = self.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            a.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        }
        let det = bareiss(a);
        Rational::new(det, scale)
    }
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Outcome of the exact definiteness test on a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Definiteness {
    PositiveDefinite,
    /// PSD and singular; `skipped` lists the indices whose pivot was zero with a
    /// zero residual row.
    PositiveSemidefinite { skipped: Vec<usize> },
    /// `certificate` satisfies `xᵀ A x = value < 0`.
    Indefinite { certificate: Vec<Rational>, value: Rational },
}

impl Definiteness {
    pub fn is_psd(&self) -> bool {
        !matches!(self, Definiteness::Indefinite { .. })
    }

    pub fn is_positive_definite(&self) -> bool {
        matches!(self, Definiteness::PositiveDefinite)
    }
}

/// Symmetric Gaussian elimination with diagonal pivots, in index order.
///
/// Tracks the congruence `W = E A Eᵀ`, so any negative residual diagonal entry
/// `W[r][r]` is certified by row `r` of `E`. A zero pivot is skipped only when its
/// residual row is entirely zero; otherwise a 2-term combination with negative
/// value is returned.
pub fn ldlt_definiteness(a: &RatMatrix) -> Definiteness {
    assert!(a.is_symmetric(), "definiteness test needs a symmetric matrix");
    let n = a.rows();
    let mut w = a.clone();
    let mut e = RatMatrix::identity(n);
    let mut skipped = Vec::new();

    let certify = |e: &RatMatrix, coeffs: &[(usize, Rational)]| -> Definiteness {
        let mut x = vec![Rational::zero(); n];
        for (row, c) in coeffs {
            for (slot, v) in x.iter_mut().zip(e.row(*row)) {
                *slot += c * v;
            }
        }
        let value = a.quadratic_form(&x);
        debug_assert!(value.is_negative());
        Definiteness::Indefinite { certificate: x, value }
    };

    for p in 0..n {
        let pivot = w[(p, p)].clone();
        if pivot.is_negative() {
            return certify(&e, &[(p, Rational::one())]);
        }
        if pivot.is_zero() {
            match (p + 1..n).find(|&j| !w[(p, j)].is_zero()) {
                None => {
                    skipped.push(p);
                    continue;
                }
                Some(j) => {
                    // (t e_p + e_j)ᵀ W (t e_p + e_j) = 2 t W_pj + W_jj = -1
                    let t = -(&w[(j, j)] + Rational::one()) / (Rational::from_integer(2.into()) * &w[(p, j)]);
                    return certify(&e, &[(p, t), (j, Rational::one())]);
                }
            }
        }
        for r in p + 1..n {
            let f = &w[(r, p)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in p + 1..n {
                let delta = &f * &w[(p, c)];
                w[(r, c)] -= delta;
            }
            for c in 0..n {
                let delta = &f * &e[(p, c)];
                e[(r, c)] -= delta;
            }
        }
        for r in p + 1..n {
            w[(r, p)] = Rational::zero();
            w[(p, r)] = Rational::zero();
        }
    }
    if skipped.is_empty() {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::PositiveSemidefinite { skipped }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    // cofactor expansion, exponential but independent of Bareiss
    fn laplace(a: &RatMatrix) -> Rational {
        if a.rows() == 0 {
            return Rational::one();
        }
        (0..a.cols())
            .map(|c| {
                let sign = if c % 2 == 0 { int(1) } else { int(-1) };
                sign * &a[(0, c)] * laplace(&a.minor(0, c))
            })
            .sum()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(RatMatrix::zeros(0, 0).determinant(), int(1));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), int(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 2]]).determinant(), int(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), int(0));
        let r = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 5), rat(2, 7)]]);
        assert_eq!(r.determinant(), rat(1, 7) - rat(1, 15));
    }

    #[test]
    fn determinant_matches_laplace() {
        let a = RatMatrix::from_fn(5, 5, |r, c| rat(((r * 7 + c * 3) % 5) as i64 - 2, (r + c + 1) as i64));
        assert_eq!(a.determinant(), laplace(&a));
        let b = RatMatrix::from_fn(4, 4, |r, c| int(((r * 3 + c) % 4) as i64 * if r == 2 { 0 } else { 1 }));
        assert_eq!(b.determinant(), laplace(&b));
    }

    #[test]
    fn definiteness_classification() {
        assert_eq!(ldlt_definiteness(&m(&[&[2, 1], &[1, 2]])), Definiteness::PositiveDefinite);
        assert_eq!(
            ldlt_definiteness(&m(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, 1]])),
            Definiteness::PositiveSemidefinite { skipped: vec![2] }
        );
        assert_eq!(
            ldlt_definiteness(&m(&[&[0, 0], &[0, 3]])),
            Definiteness::PositiveSemidefinite { skipped: vec![0] }
        );
        assert!(ldlt_definiteness(&RatMatrix::zeros(0, 0)).is_positive_definite());
    }

    #[test]
    fn indefinite_certificates_are_valid() {
        for a in [
            m(&[&[1, 0], &[0, -1]]),
            m(&[&[0, 1], &[1, 0]]),
            m(&[&[1, 2], &[2, 1]]),
            m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 0]]),
            m(&[&[0, 0, 2], &[0, 0, 0], &[2, 0, 5]]),
        ] {
            match ldlt_definiteness(&a) {
                Definiteness::Indefinite { certificate, value } => {
                    assert!(value.is_negative());
                    assert_eq!(a.quadratic_form(&certificate), value);
                }
                other => panic!("expected indefinite for {a:?}, got {other:?}"),
            }
        }
    }
}
