//! Validating a moment table. A table that is not positive comes back with an explicit
//! polynomial `P` such that `φ(P* P) < 0`.

use ncmops::ncpoly::Word;
use ncmops::rational::int;
use ncmops::state::{check_state, MomentTable, State, StateViolation};

fn main() -> ncmops::Result<()> {
    // φ(x²) = 1 but φ(x⁴) = 1/2 < φ(x²)², impossible for a state
    let m = [int(1), int(0), int(1), int(0), ncmops::rat(1, 2)];
    let t = MomentTable::from_fn(1, 4, |u| m[u.len()].clone())?;
    match check_state(&t) {
        Ok(()) => println!("a valid state"),
        Err(StateViolation::NotPositive { certificate, value }) => {
            println!("certificate P = {certificate}");
            println!("φ(P* P) = {value}, recomputed {}", t.seminorm_sq(&certificate)?);
        }
        Err(other) => println!("{other}"),
    }

    let mut asymmetric = MomentTable::from_fn(2, 2, |u| int(u.is_empty() as i64))?;
    asymmetric.set_moment(&Word::new(2, vec![1, 2])?, int(1))?;
    if let Err(v) = check_state(&asymmetric) {
        println!("{v}");
    }
    Ok(())
}
