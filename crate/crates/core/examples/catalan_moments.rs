//! Moments of the free semicircular variable from the Fock representation with `C ≡ 1`,
//! `T ≡ 0`: the even moments are the Catalan numbers.

use ncmops::fock::FockData;
use ncmops::ncpoly::Word;
use ncmops::rational::format_rational;

fn main() -> ncmops::Result<()> {
    let data = FockData::free(1, 5);
    for m in 0..=data.moment_bound() {
        let x_m = Word::new(1, vec![1; m])?;
        println!("φ(x^{m}) = {}", format_rational(&data.moment(&x_m)?));
    }
    Ok(())
}
