//! A Fock state with a degenerate kernel: `C_(1) = 0` kills every tensor ending in `e_1`.
//! The state is not faithful but still has a MOPS; the null directions show up as
//! polynomials of zero norm, closed under left multiplication.

use ncmops::fock::{FockData, FockState};
use ncmops::mops::{gram_schmidt, has_mops};
use ncmops::ncpoly::enumerate_words;
use ncmops::rational::{format_rational, int};
use ncmops::state::is_faithful_up_to;
use ncmops::RatMatrix;

fn main() -> ncmops::Result<()> {
    let c = enumerate_words(2, 3).into_iter().skip(1).map(|u| {
        let v = if u.letters() == [1] { int(0) } else { int(1) };
        (u, v)
    });
    let t = (0..2).map(|_| (0..=3).map(|k| RatMatrix::zeros(1 << k, 1 << k)).collect()).collect();
    let data = FockData::new(2, 3, c, t)?;
    for k in 1..=3 {
        let dead: Vec<String> = data.kernel_subspace(k)?.iter().map(|u| u.to_string()).collect();
        println!("level {k} kernel: {}", dead.join(" "));
    }
    let s = FockState::new(data);
    println!("faithful to degree 1: {}", is_faithful_up_to(&s, 1)?);
    println!("has MOPS to degree 3: {}", has_mops(&s, 3)?.holds());
    for (u, p, n) in gram_schmidt(&s, 2)?.iter() {
        println!("P_{u} = {p}    ‖P‖² = {}", format_rational(n));
    }
    Ok(())
}
