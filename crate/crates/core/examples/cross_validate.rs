//! Random automata checked against the enumerative oracles and lemmas.
//!
//! `cargo run --release --example cross_validate -- 5000 42`

use spdet::fuzz::{run, FuzzConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let count = args.next().map_or(1000, |a| a.parse().expect("count"));
    let seed = args.next().map_or(0, |a| a.parse().expect("seed"));
    let report = run(&FuzzConfig {
        count,
        seed,
        max_states: 6,
    })
    .unwrap();
    println!("{:#?}", report.summary);
    for d in &report.discrepancies {
        println!(
            "case {} [{}]: {}\n{}",
            d.case, d.check, d.detail, d.automaton
        );
    }
    println!(
        "{} discrepancies in {count} cases",
        report.discrepancies.len()
    );
}
