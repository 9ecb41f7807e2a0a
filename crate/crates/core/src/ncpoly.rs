//! Words over the alphabet `{1, ..., d}` and polynomials in `d` non-commuting
//! variables with exact rational coefficients.
//!
//! A [`Word`] indexes both the monomial `x_{u(1)} x_{u(2)} ... x_{u(k)}` and the
//! Fock basis tensor `e_{u(1)} ⊗ ... ⊗ e_{u(k)}`. Words are ordered degree-lexicographically:
//! first by length, then lexicographically on letters. Every matrix layout in the crate
//! uses this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    d: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(d: usize, letters: Vec<usize>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l > d) {
            return Err(Error::LetterOutOfRange { letter, d });
        }
        Ok(Word { d, letters })
    }

    pub fn empty(d: usize) -> Self {
        assert!(d > 0, "alphabet size must be at least 1");
        Word { d, letters: Vec::new() }
    }

    /// The one-letter word `(i)`. Panics if `i` is not in `1..=d`.
    pub fn letter(d: usize, i: usize) -> Self {
        Word::new(d, vec![i]).expect("letter out of range")
    }

    pub(crate) fn from_letters_unchecked(d: usize, letters: Vec<usize>) -> Self {
        debug_assert!(letters.iter().all(|&l| (1..=d).contains(&l)));
        Word { d, letters }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.letters.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { d: self.d, letters })
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { d: self.d, letters }
    }

    /// `(i, u(1), ..., u(k))`.
    pub fn prepend(&self, i: usize) -> Word {
        assert!((1..=self.d).contains(&i), "letter {i} outside 1..={}", self.d);
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(i);
        letters.extend_from_slice(&self.letters);
        Word { d: self.d, letters }
    }

    /// `(u(2), ..., u(k))`; the empty word stays empty.
    pub fn tail(&self) -> Word {
        Word {
            d: self.d,
            letters: self.letters.iter().skip(1).copied().collect(),
        }
    }

    /// The suffixes `u_j = (u(j), ..., u(k))` for `j = 1..=k`, longest first.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |j| Word {
            d: self.d,
            letters: self.letters[j..].to_vec(),
        })
    }

    /// Position of this word among all words of the same length in deg-lex order.
    pub fn level_index(&self) -> usize {
        self.letters.iter().fold(0, |acc, &l| acc * self.d + (l - 1))
    }

    /// Inverse of [`Word::level_index`] on words of length `k`.
    pub fn from_level_index(d: usize, k: usize, mut idx: usize) -> Word {
        let mut letters = vec![0; k];
        for slot in letters.iter_mut().rev() {
            *slot = idx % d + 1;
            idx /= d;
        }
        Word { d, letters }
    }

    /// Serialized form: letters concatenated when `d <= 9`, comma-separated otherwise.
    /// The empty word is the empty string.
    pub fn to_key(&self) -> String {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        if self.d <= 9 {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    pub fn parse_key(d: usize, key: &str) -> Result<Word> {
        let key = key.trim();
        if key.is_empty() {
            return Word::new(d, Vec::new());
        }
        let letters: std::result::Result<Vec<usize>, _> = if d <= 9 {
            key.chars()
                .map(|c| c.to_digit(10).map(|v| v as usize).ok_or(()))
                .collect()
        } else {
            key.split(',').map(|p| p.trim().parse().map_err(|_| ())).collect()
        };
        let letters = letters.map_err(|_| Error::Parse(format!("invalid word {key:?}")))?;
        Word::new(d, letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            write!(f, "({})", self.to_key())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters)
    }
}

/// Number of words of length `<= n` over `d` letters: `1 + d + ... + d^n`.
pub fn word_count(d: usize, n: usize) -> usize {
    (0..=n).map(|k| d.pow(k as u32)).sum()
}

/// All words of length exactly `k`, in lexicographic order.
pub fn words_of_length(d: usize, k: usize) -> Vec<Word> {
    assert!(d > 0, "alphabet size must be at least 1");
    (0..d.pow(k as u32)).map(|idx| Word::from_level_index(d, k, idx)).collect()
}

/// All words of length `<= n` in deg-lex order.
pub fn enumerate_words(d: usize, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|k| words_of_length(d, k)).collect()
}

/// A polynomial in `d` non-commuting variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPolynomial {
    d: usize,
    terms: BTreeMap<Word, Rational>,
}

impl NcPolynomial {
    pub fn zero(d: usize) -> Self {
        assert!(d > 0, "alphabet size must be at least 1");
        NcPolynomial {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::constant(d, Rational::one())
    }

    pub fn constant(d: usize, c: Rational) -> Self {
        let mut p = Self::zero(d);
        p.add_term(Word::empty(d), c);
        p
    }

    pub fn monomial(word: Word) -> Self {
        let d = word.d();
        let mut p = Self::zero(d);
        p.terms.insert(word, Rational::one());
        p
    }

    /// The variable `x_i`.
    pub fn var(d: usize, i: usize) -> Self {
        Self::monomial(Word::letter(d, i))
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Result<Self> {
        let mut p = Self::zero(d);
        for (w, c) in terms {
            if w.d() != d {
                return Err(Error::AlphabetMismatch { left: d, right: w.d() });
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// True iff the polynomial is `x_w` plus terms of strictly lower degree.
    pub fn is_monic_with_leading(&self, w: &Word) -> bool {
        self.terms.get(w).is_some_and(|c| c.is_one())
            && self.terms.keys().all(|v| v == w || v.len() < w.len())
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        assert_eq!(w.d(), self.d, "alphabet size mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &NcPolynomial) {
        assert_eq!(self.d, other.d, "alphabet size mismatch");
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), c * a);
        }
    }

    pub fn star(&self) -> Self {
        NcPolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.reverse(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        NcPolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.d);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w = u.concat(v)?;
                out.add_term(w, a * b);
            }
        }
        Ok(out)
    }

    /// `x_i * self`.
    pub fn left_mul_var(&self, i: usize) -> Self {
        NcPolynomial {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.prepend(i), c.clone())).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest degree first reads more naturally
        for (n, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mono: String = w.letters().iter().map(|l| format!("x{l}")).collect();
            match (mono.is_empty(), a.is_one(), a.is_integer()) {
                (true, _, _) => write!(f, "{a}")?,
                (false, true, _) => f.write_str(&mono)?,
                (false, false, true) => write!(f, "{a}{mono}")?,
                (false, false, false) => write!(f, "({a}){mono}")?,
            }
        }
        Ok(())
    }
}

// The operator impls panic on alphabet mismatch; use the `try_*` methods when
// inputs come from outside the crate.
impl Add for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.try_add(rhs).expect("alphabet size mismatch")
    }
}

impl Sub for &NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.try_sub(rhs).expect("alphabet size mismatch")
    }
}

impl Mul for &NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.try_mul(rhs).expect("alphabet size mismatch")
    }
}

impl Neg for &NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        self.scale(&-Rational::one())
    }
}
