//! Deciding whether a state has a monic orthogonal polynomial system.
//!
//! Two semicircular variables that are free have one; two copies of the same Gaussian
//! variable do not, since `x_1` and `x_2` are correlated.

use ncmops::fock::{FockData, FockState};
use ncmops::mops::{check_relation0, has_mops, Verdict};
use ncmops::state::MomentTable;
use ncmops::int;

fn report(name: &str, v: &Verdict) {
    match v {
        Verdict::Holds => println!("{name}: has a MOPS"),
        Verdict::Fails(w) => println!("{name}: no MOPS, first witness {w}"),
    }
}

fn main() -> ncmops::Result<()> {
    let free = FockState::new(FockData::free(2, 2));
    report("free semicircular", &has_mops(&free, 2)?);

    let g = [1, 0, 1, 0, 3];
    let duplicated = MomentTable::from_fn(2, 4, |u| int(g[u.len()]))?;
    report("duplicated Gaussian", &has_mops(&duplicated, 2)?);
    report("duplicated Gaussian (moment relation)", &check_relation0(&duplicated, 2)?);
    Ok(())
}
