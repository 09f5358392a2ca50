//! Where the legacy cycle-only checks go wrong: a system that deadlocks in
//! one branch and diverges silently in the other.

use spdet::constructions::DEFAULT_MAX_OBSERVER_NODES as BUDGET;
use spdet::{fixtures, verify};

fn main() {
    for (name, fsa) in [("S1", fixtures::s1()), ("S2", fixtures::s2())] {
        let legacy = verify::legacy_check_spd_detector(&fsa);
        let fixed = verify::check_spd_detector(&fsa);
        let ok = legacy.assumption1.as_ref().unwrap().satisfied();
        println!(
            "{name}: legacy spd={:?} assumption-free spd={:?} (assumption satisfied: {ok})",
            legacy.holds.unwrap(),
            fixed.holds.unwrap()
        );
    }

    let fsa = fixtures::s2();
    let spec = fsa.spec_of(&[("x1", "x2")]).unwrap();
    let legacy = verify::legacy_check_spdd_observer(&fsa, &spec, BUDGET);
    let fixed = verify::check_spdd_observer(&fsa, &spec, BUDGET);
    println!(
        "S2 spdd (x1,x2): legacy={:?} assumption-free={:?}",
        legacy.holds.unwrap(),
        fixed.holds.unwrap()
    );
}
