//! Current-state estimates, divergence and the deadlock/divergence report
//! on a system that both deadlocks and diverges.

use spdet::fixtures;

fn main() {
    let fsa = fixtures::s2();
    let a = fsa.symbol_id("a").unwrap();

    for word in [vec![], vec![a], vec![a, a]] {
        let est = fsa.current_state_estimate(&word).unwrap();
        let shown: Vec<&str> = word.iter().map(|&s| fsa.symbol_name(s)).collect();
        println!("M({}) = {}", shown.join(""), fsa.show_set(&est));
    }

    let div = fsa.divergent_states();
    println!("divergent states: {}", fsa.show_set(&div));
    for x in div.iter() {
        let lasso = fsa.silent_lasso(x).unwrap();
        let cycle: Vec<String> = lasso
            .cycle
            .iter()
            .map(|&(e, s)| format!("-{}-> {}", fsa.event_name(e), fsa.state_name(s)))
            .collect();
        println!("  {} {}", fsa.state_name(x), cycle.join(" "));
    }

    let report = fsa.check_assumption1();
    println!(
        "deadlock-free: {} (witness {:?})",
        report.deadlock_free.holds,
        report.deadlock_free.witness.map(|s| fsa.state_name(s))
    );
    println!(
        "divergence-free: {} (witness {:?})",
        report.divergence_free.holds,
        report.divergence_free.witness.map(|w| w
            .iter()
            .map(|&s| fsa.state_name(s).to_string())
            .collect::<Vec<_>>())
    );
}
