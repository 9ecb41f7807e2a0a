//! For a centred state with a MOPS, fourth moments are determined by lower ones:
//! φ(x_i x_j x_s x_t) = φ(x_i x_j) φ(x_s x_t) + Σ_k φ(x_i x_j x_k) φ(x_k x_s x_t) / φ(x_k²)
//! whenever (i, j) ≠ (t, s).

use ncmops::fock::{FockData, FockState};
use ncmops::ncpoly::{enumerate_words, Word};
use ncmops::rational::{format_rational, rat, Rational};
use ncmops::{RatMatrix, State};
use num_traits::Zero;

fn main() -> ncmops::Result<()> {
    let c = enumerate_words(2, 2).into_iter().skip(1).map(|u| (u.clone(), rat(u.len() as i64 + 1, 2)));
    let mut t: Vec<Vec<RatMatrix>> =
        (0..2).map(|_| (0..=2).map(|k| RatMatrix::zeros(1 << k, 1 << k)).collect()).collect();
    t[0][1] = RatMatrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(0, 1)]]);
    let s = FockState::new(FockData::new(2, 2, c, t)?);
    let phi = |l: &[usize]| s.moment(&Word::new(2, l.to_vec()).unwrap()).unwrap();

    for (i, j, a, b) in [(1, 1, 2, 2), (1, 2, 1, 2), (2, 1, 1, 1), (1, 2, 2, 2)] {
        let lhs = phi(&[i, j, a, b]);
        let mut rhs = phi(&[i, j]) * phi(&[a, b]);
        for k in 1..=2 {
            let v = phi(&[k, k]);
            if !v.is_zero() {
                rhs += phi(&[i, j, k]) * phi(&[k, a, b]) / v;
            }
        }
        println!("φ(x{i} x{j} x{a} x{b}) = {} = {}", format_rational(&lhs), format_rational(&rhs));
        assert_eq!(lhs, rhs);
    }
    // the excluded case (i, j) = (t, s) is a norm, not an identity
    let lhs: Rational = phi(&[1, 2, 2, 1]);
    println!("φ(x1 x2 x2 x1) = {} is unconstrained", format_rational(&lhs));
    Ok(())
}
