use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automaton::Fsa;

/// Parameters of a random automaton.
///
/// The same config always yields the same automaton.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenConfig {
    pub states: usize,
    pub events: usize,
    /// Size of the output alphabet observable events draw from.
    pub symbols: usize,
    /// Probability that an event is silent, in `[0, 1]`.
    pub silent_fraction: f64,
    /// Expected out-degree of each state.
    pub density: f64,
    /// Number of initial states; clamped to `states`.
    pub initial: usize,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            states: 4,
            events: 3,
            symbols: 2,
            silent_fraction: 0.3,
            density: 1.5,
            initial: 1,
            seed: 0,
        }
    }
}

pub(crate) fn symbol_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("s{i}")
    }
}

/// Draws an automaton: each event is silent with probability
/// `silent_fraction`, otherwise labelled uniformly from the alphabet; each
/// of the `states * events * states` possible transitions is present
/// independently so the expected out-degree is `density`.
pub fn random_fsa(cfg: &GenConfig) -> Fsa {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.states;
    let m = cfg.events;
    let silent_fraction = cfg.silent_fraction.clamp(0.0, 1.0);

    let mut b = Fsa::builder();
    b.states((0..n).map(|i| format!("x{i}")));
    for e in 0..m {
        let silent = cfg.symbols == 0 || rng.gen_bool(silent_fraction);
        let sym = (!silent).then(|| symbol_name(rng.gen_range(0..cfg.symbols)));
        b.event(format!("t{e}"), sym.as_deref());
    }

    let slots = (n * m) as f64;
    let p = if slots == 0.0 {
        0.0
    } else {
        (cfg.density / slots).clamp(0.0, 1.0)
    };
    for src in 0..n {
        for e in 0..m {
            for dst in 0..n {
                if rng.gen_bool(p) {
                    b.transition(format!("x{src}"), format!("t{e}"), format!("x{dst}"));
                }
            }
        }
    }

    let k = cfg.initial.min(n);
    let mut init: Vec<usize> = sample(&mut rng, n, k).into_vec();
    init.sort_unstable();
    for i in init {
        b.initial(format!("x{i}"));
    }

    b.build().expect("generated automaton is well formed")
}
