//! States on the algebra of non-commutative polynomials, presented through their moments.
//!
//! Every presentation (a finite [`MomentTable`], a Fock-space state, ...) implements
//! [`State`]: a deterministic moment evaluator valid up to a declared degree bound.
//! The pre-inner product is `⟨P, Q⟩ = φ(P* Q)`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ldlt_definiteness, Definiteness, RatMatrix};
use crate::ncpoly::{enumerate_words, NcPolynomial, Word};
use crate::rational::Rational;

pub trait State: Sync {
    fn d(&self) -> usize;

    /// Largest word length whose moment may be queried.
    fn bound(&self) -> usize;

    /// `φ(x_w)`. Errors when `|w|` exceeds [`State::bound`].
    fn moment(&self, w: &Word) -> Result<Rational>;

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.bound() {
            Err(Error::DegreeExceedsBound {
                degree,
                bound: self.bound(),
            })
        } else {
            Ok(())
        }
    }

    fn apply(&self, p: &NcPolynomial) -> Result<Rational> {
        check_alphabet(self.d(), p.d())?;
        self.check_degree(p.degree().unwrap_or(0))?;
        let mut acc = Rational::zero();
        for (w, c) in p.terms() {
            acc += c * self.moment(w)?;
        }
        Ok(acc)
    }

    /// `⟨x_v, x_w⟩ = φ(x_{reverse(v)} x_w)`.
    fn inner_words(&self, v: &Word, w: &Word) -> Result<Rational> {
        self.moment(&v.reverse().concat(w)?)
    }

    fn inner(&self, p: &NcPolynomial, q: &NcPolynomial) -> Result<Rational> {
        check_alphabet(self.d(), p.d())?;
        check_alphabet(self.d(), q.d())?;
        let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
            return Ok(Rational::zero());
        };
        self.check_degree(dp + dq)?;
        let mut acc = Rational::zero();
        for (v, a) in p.terms() {
            let rv = v.reverse();
            for (w, b) in q.terms() {
                acc += a * b * self.moment(&rv.concat(w)?)?;
            }
        }
        Ok(acc)
    }

    /// `⟨x_v, Q⟩`.
    fn inner_word_poly(&self, v: &Word, q: &NcPolynomial) -> Result<Rational> {
        self.inner(&NcPolynomial::monomial(v.clone()), q)
    }

    /// `‖P‖² = φ(P* P)`.
    fn seminorm_sq(&self, p: &NcPolynomial) -> Result<Rational> {
        self.inner(p, p)
    }

    /// Gram matrix `⟨x_v, x_w⟩` over all words of length `<= n`, deg-lex indexed.
    fn gram_matrix(&self, n: usize) -> Result<RatMatrix> {
        self.check_degree(2 * n)?;
        let words = enumerate_words(self.d(), n);
        gram_over(self, &words)
    }
}

fn check_alphabet(state_d: usize, poly_d: usize) -> Result<()> {
    if state_d != poly_d {
        Err(Error::AlphabetMismatch {
            left: state_d,
            right: poly_d,
        })
    } else {
        Ok(())
    }
}

/// Gram matrix over an arbitrary list of words.
pub fn gram_over<S: State + ?Sized>(s: &S, words: &[Word]) -> Result<RatMatrix> {
    let n = words.len();
    let mut g = RatMatrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            let v = s.inner_words(&words[r], &words[c])?;
            if r != c {
                g[(c, r)] = v.clone();
            }
            g[(r, c)] = v;
        }
    }
    Ok(g)
}

/// True iff the Gram matrix over words of length `<= n` is positive definite.
pub fn is_faithful_up_to<S: State + ?Sized>(s: &S, n: usize) -> Result<bool> {
    Ok(ldlt_definiteness(&s.gram_matrix(n)?).is_positive_definite())
}

/// A state given by its moments on all words of length `<= max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    d: usize,
    max_degree: usize,
    moments: HashMap<Word, Rational>,
}

impl MomentTable {
    /// Structural validation only: `max_degree` is even, every word of valid length is
    /// present (directly or through its reverse). Use [`check_state`] for the state axioms.
    pub fn new(d: usize, max_degree: usize, moments: impl IntoIterator<Item = (Word, Rational)>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if !max_degree.is_multiple_of(2) {
            return Err(Error::InvalidTable(format!("max_degree {max_degree} must be even")));
        }
        let mut given = HashMap::new();
        for (w, c) in moments {
            if w.d() != d {
                return Err(Error::AlphabetMismatch { left: d, right: w.d() });
            }
            if w.len() > max_degree {
                return Err(Error::InvalidTable(format!(
                    "word {w} is longer than max_degree {max_degree}"
                )));
            }
            given.insert(w, c);
        }
        let mut moments = HashMap::with_capacity(given.len());
        for w in enumerate_words(d, max_degree) {
            let value = match given.get(&w) {
                Some(v) => v.clone(),
                None => given
                    .get(&w.reverse())
                    .cloned()
                    .ok_or_else(|| Error::InvalidTable(format!("missing moment for word {w}")))?,
            };
            moments.insert(w, value);
        }
        Ok(MomentTable { d, max_degree, moments })
    }

    /// Materializes the moments of any state up to `max_degree`.
    pub fn from_state<S: State + ?Sized>(s: &S, max_degree: usize) -> Result<Self> {
        s.check_degree(max_degree)?;
        let moments = enumerate_words(s.d(), max_degree)
            .into_iter()
            .map(|w| s.moment(&w).map(|m| (w, m)))
            .collect::<Result<Vec<_>>>()?;
        MomentTable::new(s.d(), max_degree, moments)
    }

    pub fn from_fn(d: usize, max_degree: usize, f: impl Fn(&Word) -> Rational) -> Result<Self> {
        let moments: Vec<_> = enumerate_words(d, max_degree).into_iter().map(|w| {
            let m = f(&w);
            (w, m)
        }).collect();
        MomentTable::new(d, max_degree, moments)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Iterates `(word, moment)` in deg-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &Rational)> + '_ {
        enumerate_words(self.d, self.max_degree)
            .into_iter()
            .map(move |w| {
                let m = &self.moments[&w];
                (w, m)
            })
    }

    /// Replaces one moment in place (tests use this to perturb tables).
    pub fn set_moment(&mut self, w: &Word, value: Rational) -> Result<()> {
        match self.moments.get_mut(w) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::DegreeExceedsBound {
                degree: w.len(),
                bound: self.max_degree,
            }),
        }
    }
}

impl State for MomentTable {
    fn d(&self) -> usize {
        self.d
    }

    fn bound(&self) -> usize {
        self.max_degree
    }

    fn moment(&self, w: &Word) -> Result<Rational> {
        check_alphabet(self.d, w.d())?;
        self.check_degree(w.len())?;
        Ok(self.moments[w].clone())
    }
}

/// First failed state axiom of a moment table.
#[derive(Debug, Clone, PartialEq)]
pub enum StateViolation {
    NotUnital { value: Rational },
    NotHermitian { word: Word, value: Rational, reversed: Rational },
    /// `φ(P* P) = value < 0` for the certificate `P`.
    NotPositive { certificate: NcPolynomial, value: Rational },
}

impl std::fmt::Display for StateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::rational::format_rational as fr;
        match self {
            StateViolation::NotUnital { value } => write!(f, "not unital: φ(1) = {}", fr(value)),
            StateViolation::NotHermitian { word, value, reversed } => write!(
                f,
                "not compatible with *: φ(x_{word}) = {} but φ(x_{}) = {}",
                fr(value),
                word.reverse(),
                fr(reversed)
            ),
            StateViolation::NotPositive { certificate, value } => {
                write!(f, "not positive: φ(P*P) = {} for P = {certificate}", fr(value))
            }
        }
    }
}

/// Checks unitality, *-compatibility and positivity of a moment table, exactly.
#[allow(clippy::result_large_err)]
pub fn check_state(t: &MomentTable) -> std::result::Result<(), StateViolation> {
    let d = t.d;
    let one = &t.moments[&Word::empty(d)];
    if !one.is_one() {
        return Err(StateViolation::NotUnital { value: one.clone() });
    }
    for (w, m) in t.iter() {
        let r = &t.moments[&w.reverse()];
        if m != r {
            return Err(StateViolation::NotHermitian {
                word: w,
                value: m.clone(),
                reversed: r.clone(),
            });
        }
    }
    // PSD of the largest Gram matrix implies it for every leading block.
    let n = t.max_degree / 2;
    let words = enumerate_words(d, n);
    let gram = gram_over(t, &words).expect("table covers its own Gram matrix");
    if let Definiteness::Indefinite { certificate, value } = ldlt_definiteness(&gram) {
        let p = NcPolynomial::from_terms(d, words.into_iter().zip(certificate)).expect("same alphabet");
        return Err(StateViolation::NotPositive { certificate: p, value });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn d1_table(moments: &[i64]) -> MomentTable {
        MomentTable::new(
            1,
            moments.len() - 1,
            moments.iter().enumerate().map(|(k, &m)| (Word::new(1, vec![1; k]).unwrap(), int(m))),
        )
        .unwrap()
    }

    // φ(x_u) = E[X^{|u|}] for a standard Gaussian X, all letters the same variable.
    fn duplicated_gaussian() -> MomentTable {
        let gauss = [1, 0, 1, 0, 3];
        MomentTable::from_fn(2, 4, |w| int(gauss[w.len()])).unwrap()
    }

    fn w(d: usize, l: &[usize]) -> Word {
        Word::new(d, l.to_vec()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let s = d1_table(&[1, 0, 1, 0, 2]);
        assert_eq!(s.apply(&NcPolynomial::one(1)).unwrap(), int(1));
        let x = NcPolynomial::var(1, 1);
        assert_eq!(s.apply(&(&x - &x)).unwrap(), int(0));
        assert_eq!(s.apply(&NcPolynomial::monomial(w(1, &[1, 1, 1, 1]))).unwrap(), int(2));
        assert_eq!(
            s.apply(&NcPolynomial::monomial(w(1, &[1; 5]))),
            Err(Error::DegreeExceedsBound { degree: 5, bound: 4 })
        );
    }

    #[test]
    fn inner_examples() {
        let s = d1_table(&[1, 0, 1, 0, 2]);
        let one = NcPolynomial::one(1);
        let x = NcPolynomial::var(1, 1);
        assert_eq!(s.inner(&one, &one).unwrap(), int(1));
        assert_eq!(s.inner(&x, &x).unwrap(), int(1));
        // two independent centered ±1 variables: φ(x_u) = 1 iff each letter occurs evenly
        let indep = MomentTable::from_fn(2, 2, |u| {
            let ones = u.letters().iter().filter(|&&l| l == 1).count();
            int(i64::from(ones % 2 == 0 && (u.len() - ones) % 2 == 0))
        })
        .unwrap();
        assert!(check_state(&indep).is_ok());
        assert_eq!(indep.inner(&NcPolynomial::var(2, 1), &NcPolynomial::var(2, 2)).unwrap(), int(0));
        let big = NcPolynomial::monomial(w(1, &[1, 1, 1]));
        assert!(s.inner(&big, &big).is_err());
    }

    #[test]
    fn seminorm_examples() {
        let s = duplicated_gaussian();
        assert_eq!(s.seminorm_sq(&NcPolynomial::zero(2)).unwrap(), int(0));
        assert_eq!(s.seminorm_sq(&NcPolynomial::one(2)).unwrap(), int(1));
        let diff = &NcPolynomial::var(2, 1) - &NcPolynomial::var(2, 2);
        assert_eq!(s.seminorm_sq(&diff).unwrap(), int(0));
    }

    #[test]
    fn gram_examples() {
        let cat = d1_table(&[1, 0, 1, 0, 2]);
        assert_eq!(cat.gram_matrix(1).unwrap(), RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(1)]]));
        assert_eq!(cat.gram_matrix(0).unwrap(), RatMatrix::from_rows(vec![vec![int(1)]]));
        let g = duplicated_gaussian().gram_matrix(1).unwrap();
        let expect: Vec<Vec<_>> = [[1, 0, 0], [0, 1, 1], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(g, RatMatrix::from_rows(expect));
        assert!(cat.gram_matrix(3).is_err());
    }

    #[test]
    fn check_state_examples() {
        assert_eq!(check_state(&d1_table(&[1, 0, 1, 0, 2])), Ok(()));
        assert_eq!(
            check_state(&d1_table(&[2, 0, 1])),
            Err(StateViolation::NotUnital { value: int(2) })
        );
        match check_state(&d1_table(&[1, 0, -1])) {
            Err(StateViolation::NotPositive { certificate, value }) => {
                assert_eq!(certificate, NcPolynomial::var(1, 1));
                assert_eq!(value, int(-1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hermitian_violation_names_word() {
        let mut t = MomentTable::from_fn(2, 2, |u| int(i64::from(u.is_empty()))).unwrap();
        t.set_moment(&w(2, &[2, 1]), int(1)).unwrap();
        match check_state(&t) {
            Err(StateViolation::NotHermitian { word, .. }) => assert_eq!(word, w(2, &[1, 2])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_construction_errors() {
        assert!(MomentTable::new(1, 3, vec![]).is_err());
        // missing word
        let r = MomentTable::new(1, 2, vec![(Word::empty(1), int(1)), (w(1, &[1]), int(0))]);
        assert!(matches!(r, Err(Error::InvalidTable(_))));
        // reverse fills in
        let t = MomentTable::new(
            2,
            2,
            enumerate_words(2, 2).into_iter().filter(|u| u != &w(2, &[2, 1])).map(|u| {
                let v = if u == w(2, &[1, 2]) { int(7) } else { int(0) };
                (u, v)
            }),
        )
        .unwrap();
        assert_eq!(t.moment(&w(2, &[2, 1])).unwrap(), int(7));
    }

    #[test]
    fn faithfulness_examples() {
        assert!(is_faithful_up_to(&d1_table(&[1, 0, 1, 0, 2]), 2).unwrap());
        assert!(!is_faithful_up_to(&duplicated_gaussian(), 1).unwrap());
        assert!(is_faithful_up_to(&duplicated_gaussian(), 0).unwrap());
    }
}
