//! Seeded generators of Fock data and moment tables shared by the integration tests.
#![allow(dead_code)]

use ncmops::fock::{FockData, FockState};
use ncmops::linalg::RatMatrix;
use ncmops::ncpoly::{enumerate_words, words_of_length, Word};
use ncmops::oracle::JacobiData;
use ncmops::state::{check_state, is_faithful_up_to, MomentTable, State};
use ncmops::{has_mops, rat, Rational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 4`, `1 <= q <= 3`.
pub fn small_rational(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(-4..=4), r.gen_range(1..=3))
}

pub fn positive_rational(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(1..=4), r.gen_range(1..=3))
}

fn kernel(c: &[(Word, Rational)], u: &Word) -> Rational {
    u.suffixes()
        .map(|s| c.iter().find(|(w, _)| *w == s).map(|(_, v)| v.clone()).unwrap())
        .fold(Rational::one(), |a, b| a * b)
}

/// `T = diag(1/K) S` with `S` symmetric, rows and columns with `K_u = 0` cleared.
fn build_t(r: &mut impl Rng, d: usize, depth: usize, c: &[(Word, Rational)], zero_mean: bool) -> Vec<Vec<RatMatrix>> {
    (0..d)
        .map(|_| {
            (0..=depth)
                .map(|k| {
                    let level = words_of_length(d, k);
                    let n = level.len();
                    let ks: Vec<Rational> = level.iter().map(|u| kernel(c, u)).collect();
                    let mut s = RatMatrix::zeros(n, n);
                    for a in 0..n {
                        for b in a..n {
                            let v = if k == 0 && zero_mean { Rational::zero() } else { small_rational(r) };
                            s[(a, b)] = v.clone();
                            s[(b, a)] = v;
                        }
                    }
                    RatMatrix::from_fn(n, n, |a, b| {
                        if ks[a].is_zero() || ks[b].is_zero() {
                            Rational::zero()
                        } else {
                            &s[(a, b)] / &ks[a]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn positive_c(r: &mut impl Rng, d: usize, depth: usize) -> Vec<(Word, Rational)> {
    enumerate_words(d, depth).into_iter().skip(1).map(|u| (u, positive_rational(r))).collect()
}

/// All `C` entries positive.
pub fn positive_fock(r: &mut impl Rng, d: usize, depth: usize) -> FockData {
    let c = positive_c(r, d, depth);
    let t = build_t(r, d, depth, &c, false);
    FockData::new(d, depth, c, t).unwrap()
}

/// Positive `C` and `φ(x_i) = 0`.
pub fn zero_mean_fock(r: &mut impl Rng, d: usize, depth: usize) -> FockData {
    let c = positive_c(r, d, depth);
    let t = build_t(r, d, depth, &c, true);
    FockData::new(d, depth, c, t).unwrap()
}

/// Some `C` entries set to zero (at least one).
pub fn degenerate_fock(r: &mut impl Rng, d: usize, depth: usize) -> FockData {
    let mut c = positive_c(r, d, depth);
    let forced = r.gen_range(0..c.len());
    for (j, entry) in c.iter_mut().enumerate() {
        if j == forced || r.gen_bool(0.25) {
            entry.1 = Rational::zero();
        }
    }
    let t = build_t(r, d, depth, &c, false);
    FockData::new(d, depth, c, t).unwrap()
}

pub fn random_jacobi(r: &mut impl Rng, depth: usize) -> JacobiData {
    let a = (0..=depth).map(|_| small_rational(r)).collect();
    let b = (0..depth).map(|_| if r.gen_bool(0.15) { Rational::zero() } else { positive_rational(r) }).collect();
    JacobiData::new(a, b).unwrap()
}

/// A faithful d = 2 MOPS state as a degree-4 table.
pub fn faithful_mops_table(r: &mut impl Rng) -> MomentTable {
    MomentTable::from_state(&FockState::new(positive_fock(r, 2, 2)), 4).unwrap()
}

/// Moves one degree-3 moment (and its reverse) of a faithful MOPS table until the table
/// is still a faithful state but no longer has a MOPS.
pub fn perturbed_table(r: &mut impl Rng) -> MomentTable {
    loop {
        let base = faithful_mops_table(r);
        let words = words_of_length(2, 3);
        let u = words[r.gen_range(0..words.len())].clone();
        let mut delta = positive_rational(r);
        for _ in 0..12 {
            let mut t = base.clone();
            let value = t.moment(&u).unwrap() + &delta;
            t.set_moment(&u, value.clone()).unwrap();
            t.set_moment(&u.reverse(), value).unwrap();
            if check_state(&t).is_ok() && is_faithful_up_to(&t, 2).unwrap() && !has_mops(&t, 2).unwrap().holds() {
                return t;
            }
            delta /= Rational::from_integer(2.into());
        }
    }
}

/// `φ(x_u) = E[X^{|u|}]` for a standard Gaussian `X`, up to degree 4.
pub fn duplicated_gaussian() -> MomentTable {
    let g = [1, 0, 1, 0, 3];
    MomentTable::from_fn(2, 4, |u| Rational::from_integer(g[u.len()].into())).unwrap()
}

pub fn catalan(max_degree: usize) -> MomentTable {
    MomentTable::from_state(&FockState::new(FockData::free(1, max_degree / 2)), max_degree).unwrap()
}
