//! Gram-Schmidt orthogonalization under a possibly degenerate state, the decision
//! whether a state has a monic orthogonal polynomial system (MOPS), and extraction
//! of the recursion coefficients `B`, `C` of such a system.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncpoly::{enumerate_words, words_of_length, NcPolynomial, Word};
use crate::rational::{format_rational, is_negative, Rational};
use crate::state::State;

/// Monic polynomials `P_u = x_u + lower order terms` for every word of length `<= degree`,
/// with their squared seminorms under the state they were built for.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicFamily {
    d: usize,
    degree: usize,
    polys: BTreeMap<Word, NcPolynomial>,
    norms: BTreeMap<Word, Rational>,
}

impl MonicFamily {
    /// Checks that `polys` holds one monic polynomial per word of length `<= degree`
    /// and computes each squared seminorm under `s`.
    pub fn from_polys<S: State + ?Sized>(
        s: &S,
        degree: usize,
        polys: BTreeMap<Word, NcPolynomial>,
    ) -> Result<Self> {
        let d = s.d();
        s.check_degree(2 * degree)?;
        let words = enumerate_words(d, degree);
        if polys.len() != words.len() {
            return Err(Error::InvalidTable(format!(
                "family has {} polynomials, expected {}",
                polys.len(),
                words.len()
            )));
        }
        let mut norms = BTreeMap::new();
        for u in words {
            let p = polys
                .get(&u)
                .ok_or_else(|| Error::InvalidTable(format!("family is missing P_{u}")))?;
            if !p.is_monic_with_leading(&u) {
                return Err(Error::InvalidTable(format!("P_{u} = {p} is not monic with leading term x_{u}")));
            }
            norms.insert(u, s.seminorm_sq(p)?);
        }
        Ok(MonicFamily { d, degree, polys, norms })
    }

    pub(crate) fn from_parts(
        d: usize,
        degree: usize,
        polys: BTreeMap<Word, NcPolynomial>,
        norms: BTreeMap<Word, Rational>,
    ) -> Self {
        debug_assert_eq!(polys.len(), norms.len());
        MonicFamily { d, degree, polys, norms }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Panics if `|u|` exceeds the family's degree.
    pub fn poly(&self, u: &Word) -> &NcPolynomial {
        &self.polys[u]
    }

    pub fn get(&self, u: &Word) -> Option<&NcPolynomial> {
        self.polys.get(u)
    }

    /// `‖P_u‖²`. Panics if `|u|` exceeds the family's degree.
    pub fn norm_sq(&self, u: &Word) -> &Rational {
        &self.norms[u]
    }

    /// `(u, P_u, ‖P_u‖²)` in deg-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &NcPolynomial, &Rational)> {
        self.polys.iter().map(|(u, p)| (u, p, &self.norms[u]))
    }

    /// The sub-family of words of length `<= n`.
    pub fn truncate(&self, n: usize) -> MonicFamily {
        let n = n.min(self.degree);
        MonicFamily {
            d: self.d,
            degree: n,
            polys: self.polys.iter().filter(|(u, _)| u.len() <= n).map(|(u, p)| (u.clone(), p.clone())).collect(),
            norms: self.norms.iter().filter(|(u, _)| u.len() <= n).map(|(u, c)| (u.clone(), c.clone())).collect(),
        }
    }
}

/// A pair of equal-length words at which an orthogonality identity fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub u: Word,
    pub w: Word,
    /// The nonzero inner product, or the discrepancy `lhs - rhs` of a moment identity.
    pub value: Rational,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}) -> {}", self.u, self.w, format_rational(&self.value))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Distinct pairs `u < w` of equal length `1..=n`, level by level in deg-lex order.
/// Every orthogonality check scans in this order, so witnesses are comparable.
pub(crate) fn same_length_pairs(d: usize, n: usize) -> impl Iterator<Item = (Word, Word)> {
    (1..=n).flat_map(move |m| {
        let level = words_of_length(d, m);
        let mut pairs = Vec::new();
        for (a, u) in level.iter().enumerate() {
            for w in &level[a + 1..] {
                pairs.push((u.clone(), w.clone()));
            }
        }
        pairs
    })
}

/// Builds `P_u = x_u - Σ_{|v| < |u|, ‖P_v‖ ≠ 0} ⟨x_u, P_v⟩ / ‖P_v‖² · P_v`.
///
/// Projections are subtracted only onto strictly lower degrees; words of equal length
/// are never orthogonalized against each other.
pub fn gram_schmidt<S: State + ?Sized>(s: &S, n: usize) -> Result<MonicFamily> {
    let d = s.d();
    s.check_degree(2 * n)?;
    let mut polys: BTreeMap<Word, NcPolynomial> = BTreeMap::new();
    let mut norms: BTreeMap<Word, Rational> = BTreeMap::new();
    polys.insert(Word::empty(d), NcPolynomial::one(d));
    norms.insert(Word::empty(d), s.seminorm_sq(&NcPolynomial::one(d))?);

    for k in 1..=n {
        let lower: Vec<(&Word, &NcPolynomial, &Rational)> = polys
            .iter()
            .map(|(v, p)| (v, p, &norms[v]))
            .filter(|(_, _, nv)| !nv.is_zero())
            .collect();
        let level: Vec<(Word, NcPolynomial, Rational)> = words_of_length(d, k)
            .into_par_iter()
            .map(|u| {
                let mut p = NcPolynomial::monomial(u.clone());
                for (_, pv, nv) in &lower {
                    let c = s.inner_word_poly(&u, pv)? / *nv;
                    p.add_scaled(&-c, pv);
                }
                let norm = s.seminorm_sq(&p)?;
                Ok((u, p, norm))
            })
            .collect::<Result<_>>()?;
        for (u, p, norm) in level {
            norms.insert(u.clone(), norm);
            polys.insert(u, p);
        }
    }
    Ok(MonicFamily::from_parts(d, n, polys, norms))
}

/// First pair `u ≠ w`, `|u| = |w| <= n`, with `⟨P_u, P_w⟩ ≠ 0`.
pub fn orthogonality_witness<S: State + ?Sized>(s: &S, fam: &MonicFamily, n: usize) -> Result<Verdict> {
    for (u, w) in same_length_pairs(s.d(), n.min(fam.degree())) {
        let value = s.inner(fam.poly(&u), fam.poly(&w))?;
        if !value.is_zero() {
            return Ok(Verdict::Fails(Witness { u, w, value }));
        }
    }
    Ok(Verdict::Holds)
}

/// Decides whether `s` has a MOPS up to degree `n` by orthogonalizing and testing the
/// Gram-Schmidt family within each degree.
pub fn has_mops<S: State + ?Sized>(s: &S, n: usize) -> Result<Verdict> {
    let fam = gram_schmidt(s, n)?;
    orthogonality_witness(s, &fam, n)
}

/// Evaluates, for every `u ≠ w` with `|u| = |w| = m <= n`,
/// `⟨x_u, x_w⟩ = Σ_{|v| < m, ‖P_v‖ ≠ 0} ⟨x_u, P_v⟩⟨P_v, x_w⟩ / ⟨P_v, P_v⟩`
/// and reports the first violation with `value = lhs - rhs`.
pub fn check_relation0<S: State + ?Sized>(s: &S, n: usize) -> Result<Verdict> {
    s.check_degree(2 * n)?;
    if n == 0 {
        return Ok(Verdict::Holds);
    }
    let fam = gram_schmidt(s, n - 1)?;
    for (u, w) in same_length_pairs(s.d(), n) {
        let lhs = s.inner_words(&u, &w)?;
        let mut rhs = Rational::zero();
        for (v, pv, nv) in fam.iter() {
            if v.len() >= u.len() || nv.is_zero() {
                continue;
            }
            rhs += s.inner_word_poly(&u, pv)? * s.inner_word_poly(&w, pv)? / nv;
        }
        if lhs != rhs {
            return Ok(Verdict::Fails(Witness { u, w, value: lhs - rhs }));
        }
    }
    Ok(Verdict::Holds)
}

/// Coefficients of
/// `x_i P_u = P_{(i,u)} + Σ_{|w| = |u|} B_{i,w,u} P_w + δ_{i,u(1)} C_u P_{(u(2),...,u(k))}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionCoefficients {
    d: usize,
    depth: usize,
    c: BTreeMap<Word, Rational>,
    b: BTreeMap<(usize, Word, Word), Rational>,
}

impl RecursionCoefficients {
    pub fn new(
        d: usize,
        depth: usize,
        c: BTreeMap<Word, Rational>,
        b: BTreeMap<(usize, Word, Word), Rational>,
    ) -> Self {
        RecursionCoefficients { d, depth, c, b }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `C_u` for `1 <= |u| <= depth`; zero when absent.
    pub fn c(&self, u: &Word) -> Rational {
        self.c.get(u).cloned().unwrap_or_else(Rational::zero)
    }

    /// `B_{i,w,u}` for `|w| = |u| < depth`; zero when absent.
    pub fn b(&self, i: usize, w: &Word, u: &Word) -> Rational {
        self.b.get(&(i, w.clone(), u.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn c_entries(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.c.iter()
    }

    pub fn b_entries(&self) -> impl Iterator<Item = (&(usize, Word, Word), &Rational)> {
        self.b.iter()
    }

    pub fn b_entry_mut(&mut self, i: usize, w: &Word, u: &Word) -> &mut Rational {
        self.b.entry((i, w.clone(), u.clone())).or_insert_with(Rational::zero)
    }

    /// `∏_j C_{u_j}` over the suffixes of `u`.
    pub fn suffix_product(&self, u: &Word) -> Rational {
        u.suffixes().map(|s| self.c(&s)).fold(Rational::one(), |a, b| a * b)
    }
}

/// Reads off `B` and `C` by expanding `x_i P_u` in the MOPS `fam`.
///
/// `C_u = ‖P_u‖² / ‖P_{tail(u)}‖²` and `B_{i,w,u} = ⟨P_w, x_i P_u⟩ / ‖P_w‖²`, both set to
/// zero where the denominator vanishes. Also verifies `C_u >= 0`, the weighted symmetry
/// `B_{i,s,u} ∏ C_{s_j} = B_{i,u,s} ∏ C_{u_j}` and that `x_i P_u` has no other components.
pub fn extract_recursion<S: State + ?Sized>(s: &S, fam: &MonicFamily, n: usize) -> Result<RecursionCoefficients> {
    let d = s.d();
    if fam.degree() < n || fam.d() != d {
        return Err(Error::RecursionViolation(format!(
            "family of degree {} cannot supply depth {n}",
            fam.degree()
        )));
    }
    s.check_degree(2 * n)?;
    if let Verdict::Fails(Witness { u, w, value }) = orthogonality_witness(s, fam, n)? {
        return Err(Error::NotOrthogonal(Box::new(Witness { u, w, value })));
    }

    let mut c = BTreeMap::new();
    for u in enumerate_words(d, n).into_iter().filter(|u| !u.is_empty()) {
        let denom = fam.norm_sq(&u.tail());
        let value = if denom.is_zero() {
            Rational::zero()
        } else {
            fam.norm_sq(&u) / denom
        };
        if is_negative(&value) {
            return Err(Error::RecursionViolation(format!("C_{u} = {} is negative", format_rational(&value))));
        }
        c.insert(u, value);
    }

    let mut b = BTreeMap::new();
    for k in 0..n {
        let level = words_of_length(d, k);
        for i in 1..=d {
            for u in &level {
                let xpu = fam.poly(u).left_mul_var(i);
                for w in &level {
                    let nw = fam.norm_sq(w);
                    let value = if nw.is_zero() {
                        Rational::zero()
                    } else {
                        s.inner(fam.poly(w), &xpu)? / nw
                    };
                    b.insert((i, w.clone(), u.clone()), value);
                }
            }
        }
    }
    let coeffs = RecursionCoefficients { d, depth: n, c, b };

    for k in 0..n {
        let level = words_of_length(d, k);
        for i in 1..=d {
            for u in &level {
                for v in &level {
                    let lhs = coeffs.b(i, v, u) * coeffs.suffix_product(v);
                    let rhs = coeffs.b(i, u, v) * coeffs.suffix_product(u);
                    if lhs != rhs {
                        return Err(Error::RecursionViolation(format!(
                            "weighted symmetry fails for i = {i}, s = {v}, u = {u}"
                        )));
                    }
                }
                check_expansion(s, fam, &coeffs, i, u)?;
            }
        }
    }
    Ok(coeffs)
}

// Components of x_i P_u along P_v for |v| != |u| must be exactly the designated ones.
fn check_expansion<S: State + ?Sized>(
    s: &S,
    fam: &MonicFamily,
    coeffs: &RecursionCoefficients,
    i: usize,
    u: &Word,
) -> Result<()> {
    let xpu = fam.poly(u).left_mul_var(i);
    let k = u.len();
    let up = u.prepend(i);
    for (v, pv, nv) in fam.iter() {
        if v.len() == k || v.len() > k + 1 {
            continue;
        }
        let actual = s.inner(pv, &xpu)?;
        let expected = if v.len() == k + 1 {
            if *v == up {
                nv.clone()
            } else {
                Rational::zero()
            }
        } else if k > 0 && v.len() == k - 1 && u.first() == Some(i) && *v == u.tail() {
            coeffs.c(u) * nv
        } else {
            Rational::zero()
        };
        if actual != expected {
            return Err(Error::RecursionViolation(format!(
                "x_{i} P_{u} has component {} along P_{v}, expected {}",
                format_rational(&actual),
                format_rational(&expected)
            )));
        }
    }
    Ok(())
}

/// Recomputes each line of the recursion and checks the residual has zero seminorm,
/// i.e. both sides agree in `L²(s)`.
pub fn verify_recursion<S: State + ?Sized>(fam: &MonicFamily, coeffs: &RecursionCoefficients, s: &S) -> bool {
    let d = fam.d();
    let n = coeffs.depth();
    if d != coeffs.d() || d != s.d() || fam.degree() < n {
        return false;
    }
    for k in 0..n {
        let level = words_of_length(d, k);
        for u in &level {
            for i in 1..=d {
                let mut residual = fam.poly(u).left_mul_var(i);
                residual.add_scaled(&-Rational::one(), fam.poly(&u.prepend(i)));
                for w in &level {
                    residual.add_scaled(&-coeffs.b(i, w, u), fam.poly(w));
                }
                if u.first() == Some(i) {
                    residual.add_scaled(&-coeffs.c(u), fam.poly(&u.tail()));
                }
                match s.seminorm_sq(&residual) {
                    Ok(v) if v.is_zero() => {}
                    _ => return false,
                }
            }
        }
    }
    true
}
