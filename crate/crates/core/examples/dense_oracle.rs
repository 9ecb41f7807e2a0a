//! The reference implementations agree with the main ones: dense Gram systems against
//! Gram-Schmidt, and Jacobi matrix powers against the Fock moment.

use ncmops::mops::gram_schmidt;
use ncmops::ncpoly::Word;
use ncmops::oracle::{dense_orthogonalize, jacobi_moments, JacobiData};
use ncmops::rational::{format_rational, rat};
use ncmops::FockState;

fn main() -> ncmops::Result<()> {
    let j = JacobiData::new(vec![rat(1, 2), rat(-1, 1), rat(0, 1), rat(3, 1)], vec![rat(2, 1), rat(1, 3), rat(5, 1)])?;
    let data = j.to_fock_data();
    let oracle = jacobi_moments(&j, 7)?;
    for (m, e) in oracle.iter().enumerate() {
        let got = data.moment(&Word::new(1, vec![1; m])?)?;
        println!("m_{m}: Fock {} / Jacobi {}", format_rational(&got), format_rational(e));
    }
    let s = FockState::new(data);
    let a = gram_schmidt(&s, 3)?;
    let b = dense_orthogonalize(&s, 3)?;
    let same = a.iter().all(|(u, p, _)| b.poly(u) == p);
    println!("dense orthogonalization identical: {same}");
    Ok(())
}
