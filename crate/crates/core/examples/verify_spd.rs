//! The three strong periodic detectability procedures side by side.

use spdet::cli::report::verdict_json;
use spdet::constructions::DEFAULT_MAX_OBSERVER_NODES;
use spdet::{fixtures, verify};

fn main() {
    for (name, fsa) in [
        ("S1", fixtures::s1()),
        ("S2", fixtures::s2()),
        ("S3", fixtures::s3()),
    ] {
        println!("{name}");
        for v in [
            verify::check_spd_observer(&fsa, DEFAULT_MAX_OBSERVER_NODES),
            verify::check_spd_detector(&fsa),
            verify::check_spd_cc(&fsa),
        ] {
            println!(
                "  {:<10} holds={:?} nodes={} edges={}",
                v.method.as_str(),
                v.holds.unwrap(),
                v.stats.nodes,
                v.stats.edges
            );
            let named = verdict_json(&fsa, &v);
            for c in named["conditions"].as_array().unwrap() {
                if c["fired"] == true {
                    println!(
                        "    condition {} ({}): {}",
                        c["id"],
                        c["name"].as_str().unwrap(),
                        c["witness"]
                    );
                }
            }
        }
    }
}
