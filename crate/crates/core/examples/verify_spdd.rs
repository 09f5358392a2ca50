//! Strong periodic D-detectability against different specifications.

use spdet::constructions::DEFAULT_MAX_OBSERVER_NODES as BUDGET;
use spdet::{fixtures, verify, SpecPairs};

fn main() {
    let fsa = fixtures::s3();
    for pairs in [vec![("x0", "x2")], vec![("x1", "x2")], vec![]] {
        let spec = fsa.spec_of(&pairs).unwrap();
        let v = verify::check_spdd_observer(&fsa, &spec, BUDGET);
        println!("S3 spec {pairs:?}: holds={:?}", v.holds.unwrap());
    }

    // with every off-diagonal pair specified, SPDD is SPD
    let all = SpecPairs::all_off_diagonal(fsa.state_count());
    let d = verify::check_spdd_observer(&fsa, &all, BUDGET).holds;
    let s = verify::check_spd_observer(&fsa, BUDGET).holds;
    println!("all pairs: spdd={d:?} spd={s:?}");
}
