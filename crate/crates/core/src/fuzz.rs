//! Seeded cross-validation campaigns.
//!
//! A master seed expands into a corpus of random automata, each paired with
//! a random specification. Every case runs the three SPD procedures, the
//! SPDD procedure, both enumerative oracles, both lemma checks, the
//! SPD/SPDD bridge and, on systems satisfying the legacy assumption, the
//! legacy checks. Cases run in parallel; results keep corpus order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Fsa, SpecPairs, StateId};
use crate::cli::format::print_fsa;
use crate::constructions::DEFAULT_MAX_OBSERVER_NODES as BUDGET;
use crate::oracle::{
    check_lifting, check_simulation, naive_spd, naive_spdd, random_fsa, GenConfig,
    ORACLE_MAX_STATES,
};
use crate::verify::{self, Verdict};

pub const SILENT_FRACTIONS: [f64; 3] = [0.0, 0.3, 0.6];
pub const MAX_EVENTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub seed: u64,
    pub max_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzError {
    #[error("--max-states must be between 1 and {ORACLE_MAX_STATES}, got {0}")]
    MaxStates(usize),
}

#[derive(Debug, Clone)]
pub struct Case {
    pub index: usize,
    pub config: GenConfig,
    pub fsa: Fsa,
    pub spec: SpecPairs,
}

/// Expands the master seed into `count` cases. Deterministic.
pub fn corpus(cfg: &FuzzConfig) -> Result<Vec<Case>, FuzzError> {
    if cfg.max_states == 0 || cfg.max_states > ORACLE_MAX_STATES {
        return Err(FuzzError::MaxStates(cfg.max_states));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cases = (0..cfg.count)
        .map(|index| {
            let states = rng.gen_range(1..=cfg.max_states);
            let config = GenConfig {
                states,
                events: rng.gen_range(0..=MAX_EVENTS),
                symbols: rng.gen_range(1..=3),
                silent_fraction: *SILENT_FRACTIONS.choose(&mut rng).expect("nonempty"),
                density: rng.gen_range(0.5..2.5),
                initial: rng.gen_range(1..=states.min(2)),
                seed: rng.gen(),
            };
            let fsa = random_fsa(&config);
            let mut spec = SpecPairs::new();
            for a in 0..states {
                for b in 0..states {
                    if a != b && rng.gen_bool(0.25) {
                        spec.insert(StateId::new(a), StateId::new(b));
                    }
                }
            }
            Case {
                index,
                config,
                fsa,
                spec,
            }
        })
        .collect();
    Ok(cases)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub case: usize,
    pub check: &'static str,
    pub detail: String,
    /// The automaton in `.fsa` form, spec included.
    pub automaton: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub spd: bool,
    pub spdd: bool,
    pub vacuous: bool,
    pub assumption1: bool,
    /// Cases where the legacy SPD check gives the wrong answer.
    pub legacy_wrong: bool,
}

fn flags(v: &Verdict) -> (Option<bool>, bool, bool) {
    (v.holds, v.fired(1), v.fired(2))
}

/// Runs every consistency check on one automaton. Returns the outcome and
/// the names and details of failed checks.
pub fn cross_check(fsa: &Fsa, spec: &SpecPairs) -> (CaseOutcome, Vec<(&'static str, String)>) {
    let mut bad = Vec::new();
    let obs = verify::check_spd_observer(fsa, BUDGET);
    let det = verify::check_spd_detector(fsa);
    let cc = verify::check_spd_cc(fsa);
    if flags(&obs) != flags(&det) || flags(&det) != flags(&cc) {
        bad.push((
            "method-agreement",
            format!(
                "observer {:?}, detector {:?}, cc {:?}",
                flags(&obs),
                flags(&det),
                flags(&cc)
            ),
        ));
    }

    let spdd = verify::check_spdd_observer(fsa, spec, BUDGET);
    match naive_spd(fsa) {
        Ok(n) if (Some(n.holds), n.divergent_estimate, n.persistent_cycle) != flags(&det) => bad
            .push((
                "naive-spd",
                format!("naive {n:?}, detector {:?}", flags(&det)),
            )),
        Ok(_) => {}
        Err(e) => bad.push(("naive-spd", e.to_string())),
    }
    match naive_spdd(fsa, spec) {
        Ok(n) if (Some(n.holds), n.divergent_estimate, n.persistent_cycle) != flags(&spdd) => bad
            .push((
                "naive-spdd",
                format!("naive {n:?}, observer {:?}", flags(&spdd)),
            )),
        Ok(_) => {}
        Err(e) => bad.push(("naive-spdd", e.to_string())),
    }

    match check_lifting(fsa) {
        Ok(None) => {}
        Ok(Some(cx)) => bad.push(("lifting", format!("{cx:?}"))),
        Err(e) => bad.push(("lifting", e.to_string())),
    }
    match check_simulation(fsa) {
        Ok(None) => {}
        Ok(Some(cx)) => bad.push(("simulation", format!("{cx:?}"))),
        Err(e) => bad.push(("simulation", e.to_string())),
    }

    let all = SpecPairs::all_off_diagonal(fsa.state_count());
    let bridge = verify::check_spdd_observer(fsa, &all, BUDGET);
    if bridge.holds != obs.holds {
        bad.push((
            "bridge",
            format!("spdd(all pairs) {:?}, spd {:?}", bridge.holds, obs.holds),
        ));
    }

    let assumption1 = fsa.check_assumption1().satisfied();
    let legacy_spd = verify::legacy_check_spd_detector(fsa);
    if assumption1 {
        let legacy_spdd = verify::legacy_check_spdd_observer(fsa, spec, BUDGET);
        if legacy_spd.holds != det.holds || legacy_spdd.holds != spdd.holds {
            bad.push((
                "legacy",
                format!(
                    "legacy spd {:?} vs {:?}, legacy spdd {:?} vs {:?}",
                    legacy_spd.holds, det.holds, legacy_spdd.holds, spdd.holds
                ),
            ));
        }
    }

    let outcome = CaseOutcome {
        spd: det.holds == Some(true),
        spdd: spdd.holds == Some(true),
        vacuous: det.stats.vacuous,
        assumption1,
        legacy_wrong: legacy_spd.holds != det.holds,
    };
    (outcome, bad)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub spd_holds: usize,
    pub spdd_holds: usize,
    pub vacuous: usize,
    pub assumption1: usize,
    pub legacy_wrong: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub count: usize,
    pub seed: u64,
    pub max_states: usize,
    pub summary: Summary,
    pub discrepancies: Vec<Discrepancy>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn run(cfg: &FuzzConfig) -> Result<FuzzReport, FuzzError> {
    let cases = corpus(cfg)?;
    let results: Vec<(CaseOutcome, Vec<Discrepancy>)> = cases
        .par_iter()
        .map(|case| {
            let (outcome, bad) = cross_check(&case.fsa, &case.spec);
            let discrepancies = bad
                .into_iter()
                .map(|(check, detail)| Discrepancy {
                    case: case.index,
                    check,
                    detail,
                    automaton: print_fsa(&case.fsa, Some(&case.spec)),
                })
                .collect();
            (outcome, discrepancies)
        })
        .collect();

    let count = |f: fn(&CaseOutcome) -> bool| results.iter().filter(|(o, _)| f(o)).count();
    let summary = Summary {
        spd_holds: count(|o| o.spd),
        spdd_holds: count(|o| o.spdd),
        vacuous: count(|o| o.vacuous),
        assumption1: count(|o| o.assumption1),
        legacy_wrong: count(|o| o.legacy_wrong),
    };
    Ok(FuzzReport {
        count: cfg.count,
        seed: cfg.seed,
        max_states: cfg.max_states,
        summary,
        discrepancies: results.into_iter().flat_map(|(_, d)| d).collect(),
    })
}
