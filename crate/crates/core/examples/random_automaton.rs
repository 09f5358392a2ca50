//! Generating an automaton from a seed and writing it in `.fsa` form.

use spdet::cli::format::print_fsa;
use spdet::oracle::{random_fsa, GenConfig};
use spdet::verify;

fn main() {
    let cfg = GenConfig {
        states: 5,
        events: 4,
        silent_fraction: 0.3,
        density: 2.0,
        seed: 7,
        ..Default::default()
    };
    let fsa = random_fsa(&cfg);
    print!("{}", print_fsa(&fsa, None));
    println!("# spd: {:?}", verify::check_spd_cc(&fsa).holds.unwrap());
}
