//! Observer, detector and ε-extended self-composition of a small system,
//! printed as Graphviz. Pipe one section into `dot -Tsvg` to draw it.

use spdet::cli::dot::{export_dot, DotOptions, Structure};
use spdet::constructions::{
    build_detector, build_epsilon_composition, build_observer, DEFAULT_MAX_OBSERVER_NODES,
};
use spdet::oracle::observable_sequence;
use spdet::{fixtures, StatePair};

fn main() {
    let fsa = fixtures::s3();
    let opts = |name: &str| DotOptions {
        name: name.into(),
        ..Default::default()
    };

    let obs = build_observer(&fsa, DEFAULT_MAX_OBSERVER_NODES).unwrap();
    print!(
        "{}",
        export_dot(&fsa, Structure::Observer(&obs), &opts("observer"))
    );
    let det = build_detector(&fsa);
    print!(
        "{}",
        export_dot(&fsa, Structure::Detector(&det), &opts("detector"))
    );
    let cc = build_epsilon_composition(&fsa);
    print!(
        "{}",
        export_dot(&fsa, Structure::Composition(&cc), &opts("cc_epsilon"))
    );

    // the detector's b-loop on {x1,x2}, realised in the composition
    let x1 = fsa.state_id("x1").unwrap();
    let x2 = fsa.state_id("x2").unwrap();
    let b = fsa.symbol_id("b").unwrap();
    let from = StatePair::new(x1, x2);
    let path = observable_sequence(&fsa, from, b, from).unwrap();
    let mut line = fsa.show_pair(from);
    for (ev, to) in path {
        line += &format!(" -{ev:?}-> {}", fsa.show_pair(to));
    }
    eprintln!("{line}");
}
