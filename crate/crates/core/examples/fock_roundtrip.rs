//! From Fock data to moments and back. The extracted data need not equal the original
//! (degenerate directions are arbitrary), but the moments up to `2K + 1` must.

use ncmops::fock::{extract_fock_data, FockData, FockState};
use ncmops::mops::gram_schmidt;
use ncmops::ncpoly::enumerate_words;
use ncmops::rational::{int, rat};
use ncmops::{RatMatrix, State};

fn main() -> ncmops::Result<()> {
    let depth = 2;
    let c = enumerate_words(2, depth).into_iter().skip(1).map(|u| {
        let v = if u.letters()[0] == 1 { rat(2, 1) } else { rat(1, 2) };
        (u, v)
    });
    let mut t: Vec<Vec<RatMatrix>> =
        (0..2).map(|_| (0..=depth).map(|k| RatMatrix::zeros(1 << k, 1 << k)).collect()).collect();
    t[1][0][(0, 0)] = int(1);
    let original = FockData::new(2, depth, c, t)?;
    ncmops::validate_fock_data(&original).expect("valid Fock data");

    let s = FockState::new(original);
    let fam = gram_schmidt(&s, depth)?;
    let extracted = extract_fock_data(&s, &fam, depth)?;
    let again = FockState::new(extracted);

    let words = enumerate_words(2, 2 * depth + 1);
    let mismatches = words.iter().filter(|w| s.moment(w).ok() != again.moment(w).ok()).count();
    println!("compared {} moments, {} mismatches", words.len(), mismatches);
    Ok(())
}
