//! Gram-Schmidt polynomials of a one-variable Gaussian and the recursion they satisfy,
//! `x P_k = P_{k+1} + k P_{k-1}` (Hermite).

use ncmops::fock::FockState;
use ncmops::mops::{extract_recursion, gram_schmidt, verify_recursion};
use ncmops::ncpoly::Word;
use ncmops::oracle::JacobiData;
use ncmops::rational::{format_rational, int};

fn main() -> ncmops::Result<()> {
    let hermite = JacobiData::new(vec![int(0); 5], (1..=4).map(int).collect())?;
    let s = FockState::new(hermite.to_fock_data());
    let fam = gram_schmidt(&s, 4)?;
    for (u, p, norm) in fam.iter() {
        println!("P_{u} = {p}    ‖P‖² = {}", format_rational(norm));
    }
    let rec = extract_recursion(&s, &fam, 4)?;
    for k in 1..=4 {
        let u = Word::new(1, vec![1; k])?;
        println!("C_{u} = {}", format_rational(&rec.c(&u)));
    }
    println!("recursion reproduces the family: {}", verify_recursion(&fam, &rec, &s));
    Ok(())
}
