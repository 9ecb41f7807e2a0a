//! Hankel-type determinants of a faithful state: `h_u`, `𝔥_n`, and the polynomials
//! `det M_u / 𝔥_{|u|}`, which coincide with the Gram-Schmidt family.

use ncmops::fock::{FockData, FockState};
use ncmops::hankel::{build_frame, check_relation1, frak_h, hankel_family};
use ncmops::mops::gram_schmidt;
use ncmops::ncpoly::{enumerate_words, Word};
use ncmops::rational::{format_rational, rat};
use ncmops::RatMatrix;

fn main() -> ncmops::Result<()> {
    // two variables coupled through a symmetric level-one interaction
    let mut t: Vec<Vec<RatMatrix>> =
        (0..2).map(|_| (0..=2).map(|k| RatMatrix::zeros(1 << k, 1 << k)).collect()).collect();
    t[0][1] = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 3), rat(-1, 1)]]);
    let c = enumerate_words(2, 2).into_iter().skip(1).map(|u| (u, rat(1, 1)));
    let s = FockState::new(FockData::new(2, 2, c, t)?);

    for n in 0..=3 {
        println!("𝔥_{n} = {}", format_rational(&frak_h(&s, n)?));
    }
    let u = Word::new(2, vec![1, 2])?;
    let frame = build_frame(&s, &u)?;
    println!("A_{u} is {0}×{0}, h_{u} = {1}", frame.index().len(), format_rational(&frame.h()));

    let hankel = hankel_family(&s, 2)?;
    let gs = gram_schmidt(&s, 2)?;
    for (w, p, _) in hankel.iter() {
        println!("P_{w} = {p}  (Gram-Schmidt agrees: {})", gs.poly(w) == p);
    }
    println!("Relation-1 holds: {}", check_relation1(&s, 2)?.holds());
    Ok(())
}
