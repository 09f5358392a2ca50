//! Loads a `.fsa` file and decides SPD with every method, plus SPDD when
//! the file has `spec` lines.
//!
//! `cargo run --example check_file -- crates/core/fixtures/s2.fsa`

use spdet::cli::format::parse_fsa;
use spdet::constructions::DEFAULT_MAX_OBSERVER_NODES as BUDGET;
use spdet::verify;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/s2.fsa").into());
    let text = std::fs::read_to_string(&path).expect("readable file");
    let doc = match parse_fsa(&text) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }
    };
    let fsa = &doc.fsa;
    println!(
        "{path}: {} states, {} events, {} transitions",
        fsa.state_count(),
        fsa.event_count(),
        fsa.transitions().len()
    );
    for v in [
        verify::check_spd_observer(fsa, BUDGET),
        verify::check_spd_detector(fsa),
        verify::check_spd_cc(fsa),
    ] {
        println!("spd  {:<10} {:?}", v.method.as_str(), v.holds);
    }
    if let Some(spec) = &doc.spec {
        let v = verify::check_spdd_observer(fsa, spec, BUDGET);
        println!("spdd {:<10} {:?}", v.method.as_str(), v.holds);
    }
}
