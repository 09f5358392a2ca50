use proptest::prelude::*;

use super::*;
use crate::automaton::{SpecPairs, StatePair};
use crate::constructions::{build_detector, PairEvent, DEFAULT_MAX_OBSERVER_NODES as BUDGET};
use crate::fixtures::*;
use crate::oracle::{random_fsa, GenConfig};

fn flags(v: &Verdict) -> (Option<bool>, bool, bool) {
    (v.holds, v.fired(1), v.fired(2))
}

#[test]
fn s1_fails_through_cycle_only() {
    let fsa = s1();
    for v in [
        check_spd_observer(&fsa, BUDGET),
        check_spd_detector(&fsa),
        check_spd_cc(&fsa),
    ] {
        assert_eq!(flags(&v), (Some(false), false, true), "{:?}", v.method);
    }
}

#[test]
fn s2_fails_through_divergence_only() {
    let fsa = s2();
    for v in [
        check_spd_observer(&fsa, BUDGET),
        check_spd_detector(&fsa),
        check_spd_cc(&fsa),
    ] {
        assert_eq!(flags(&v), (Some(false), true, false), "{:?}", v.method);
    }
    let v = check_spd_cc(&fsa);
    let Some(Witness::DivergentPair { pair, .. }) = &v.condition(1).witness else {
        panic!()
    };
    assert_eq!(fsa.show_pair(*pair), "(x2,x1)");
}

#[test]
fn s3_fails_through_b_loop() {
    let fsa = s3();
    let det = check_spd_detector(&fsa);
    assert_eq!(flags(&det), (Some(false), false, true));
    let Some(Witness::SetCycle { nodes, symbols }) = &det.condition(2).witness else {
        panic!()
    };
    assert_eq!(nodes, &vec![set(&fsa, &["x1", "x2"]); 2]);
    assert_eq!(symbols, &vec![fsa.symbol_id("b").unwrap()]);

    let cc = check_spd_cc(&fsa);
    assert_eq!(flags(&cc), (Some(false), false, true));
    let Some(Witness::PairCycle { pairs, segments }) = &cc.condition(2).witness else {
        panic!()
    };
    assert!(pairs.iter().all(|p| !p.is_diagonal()));
    assert_eq!(segments.len(), 1);
    assert_eq!(segments[0].symbol, fsa.symbol_id("b").unwrap());
    assert_eq!(segments[0].steps[0].0, PairEvent::EpsLink);
}

#[test]
fn spdd_golden() {
    let fsa = s3();
    let v = check_spdd_observer(&fsa, &fsa.spec_of(&[("x1", "x2")]).unwrap(), BUDGET);
    assert_eq!(flags(&v), (Some(false), false, true));
    let v = check_spdd_observer(&fsa, &fsa.spec_of(&[("x0", "x2")]).unwrap(), BUDGET);
    assert_eq!(flags(&v), (Some(true), false, false));

    let fsa = s2();
    let v = check_spdd_observer(&fsa, &fsa.spec_of(&[("x1", "x2")]).unwrap(), BUDGET);
    assert_eq!(flags(&v), (Some(false), true, false));
    for fsa in [s1(), s2(), s3()] {
        assert_eq!(
            check_spdd_observer(&fsa, &SpecPairs::new(), BUDGET).holds,
            Some(true)
        );
    }
}

#[test]
fn legacy_is_fooled_by_divergence() {
    let fsa = s2();
    let v = legacy_check_spd_detector(&fsa);
    assert_eq!(v.holds, Some(true));
    assert!(!v.assumption1.as_ref().unwrap().satisfied());
    let spec = fsa.spec_of(&[("x1", "x2")]).unwrap();
    assert_eq!(
        legacy_check_spdd_observer(&fsa, &spec, BUDGET).holds,
        Some(true)
    );

    let fsa = s1();
    let v = legacy_check_spd_detector(&fsa);
    assert_eq!(v.holds, check_spd_detector(&fsa).holds);
    assert!(v.assumption1.unwrap().satisfied());
    let fsa = s3();
    assert_eq!(
        legacy_check_spdd_observer(&fsa, &fsa.spec_of(&[("x1", "x2")]).unwrap(), BUDGET).holds,
        Some(false)
    );
}

#[test]
fn legacy_sd() {
    assert_eq!(legacy_check_sd_detector(&s1()).holds, Some(false));
    assert_eq!(legacy_check_sd_detector(&s3()).holds, Some(false));
    let path = Fsa::builder()
        .states(["p", "q", "r"])
        .initial("p")
        .event("e", Some("a"))
        .transition("p", "e", "q")
        .transition("q", "e", "r")
        .build()
        .unwrap();
    assert_eq!(legacy_check_sd_detector(&path).holds, Some(true));
}

#[test]
fn trivial_systems_hold() {
    let lone = Fsa::builder().states(["x"]).initial("x").build().unwrap();
    let v = check_spd_observer(&lone, BUDGET);
    assert_eq!(v.holds, Some(true));
    assert!(v.stats.vacuous);

    let det = Fsa::builder()
        .states(["p", "q"])
        .initial("p")
        .event("e", Some("a"))
        .event("f", Some("b"))
        .transition("p", "e", "q")
        .transition("q", "f", "p")
        .build()
        .unwrap();
    let v = check_spd_cc(&det);
    assert_eq!(v.holds, Some(true));
    assert!(!v.stats.vacuous);

    let empty = Fsa::builder().states(["x"]).build().unwrap();
    for v in [
        check_spd_observer(&empty, BUDGET),
        check_spd_detector(&empty),
        check_spd_cc(&empty),
    ] {
        assert_eq!(v.holds, Some(true));
        assert!(v.stats.vacuous);
    }
}

#[test]
fn budget_gives_unknown() {
    let v = check_spd_observer(&s1(), 1);
    assert!(v.is_unknown());
    assert!(v.conditions.is_empty());
    assert_eq!(v.stats.nodes, 1);
}

fn replay_set_cycle(fsa: &Fsa, w: &Witness, next: impl Fn(&StateSet, SymbolId, &StateSet) -> bool) {
    let Witness::SetCycle { nodes, symbols } = w else {
        panic!("{w:?}")
    };
    assert_eq!(nodes.first(), nodes.last());
    assert_eq!(nodes.len(), symbols.len() + 1);
    for (pair, &sym) in nodes.windows(2).zip(symbols) {
        assert!(
            next(&pair[0], sym, &pair[1]),
            "{} -> {}",
            fsa.show_set(&pair[0]),
            fsa.show_set(&pair[1])
        );
    }
}

fn check_witnesses(fsa: &Fsa) {
    let obs = check_spd_observer(fsa, BUDGET);
    if let Some(Witness::DivergentSet { node, word, lasso }) = &obs.condition(1).witness {
        assert!(lasso.replays_in(fsa));
        assert!(node.contains(lasso.start) && node.len() > 1);
        assert_eq!(&fsa.current_state_estimate(word).unwrap(), node);
    }
    if let Some(w) = &obs.condition(2).witness {
        replay_set_cycle(fsa, w, |q, s, t| fsa.observe(q, s) == *t && q.len() > 1);
    }

    let det = build_detector(fsa);
    let v = check_spd_detector(fsa);
    if let Some(Witness::DivergentSet { node, lasso, .. }) = &v.condition(1).witness {
        assert!(lasso.replays_in(fsa) && node.contains(lasso.start));
        assert!(det.find(node).is_some());
    }
    if let Some(w) = &v.condition(2).witness {
        replay_set_cycle(fsa, w, |q, s, t| {
            q.len() == 2 && crate::constructions::detector_successors(fsa, q, s).contains(t)
        });
    }

    let v = check_spd_cc(fsa);
    if let Some(Witness::DivergentPair { pair, lasso }) = &v.condition(1).witness {
        assert!(!pair.is_diagonal() && lasso.start == pair.left && lasso.replays_in(fsa));
    }
    if let Some(Witness::PairCycle { pairs, segments }) = &v.condition(2).witness {
        assert_eq!(pairs.first(), pairs.last());
        for (w, seg) in pairs.windows(2).zip(segments) {
            let mut cur: StatePair = w[0];
            let mut observed = 0;
            for &(ev, next) in &seg.steps {
                let ok = match ev {
                    PairEvent::EpsLink => {
                        crate::constructions::epsilon_links(fsa, cur).contains(&next)
                    }
                    _ => crate::constructions::pair_successors(fsa, cur).contains(&(ev, next)),
                };
                assert!(ok);
                observed += ev.is_observable() as usize;
                cur = next;
            }
            assert_eq!((observed, cur), (1, w[1]));
            assert!(!w[1].is_diagonal());
        }
    }
}

#[test]
fn fixture_witnesses_replay() {
    for fsa in [s1(), s2(), s3()] {
        check_witnesses(&fsa);
    }
}

fn arb_config() -> impl Strategy<Value = GenConfig> {
    (
        1usize..=5,
        0usize..=5,
        1usize..=3,
        prop::sample::select(vec![0.0, 0.3, 0.6]),
        0.5f64..2.5,
        1usize..=2,
        any::<u64>(),
    )
        .prop_map(
            |(states, events, symbols, silent_fraction, density, initial, seed)| GenConfig {
                states,
                events,
                symbols,
                silent_fraction,
                density,
                initial: initial.min(states),
                seed,
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn methods_agree(cfg in arb_config()) {
        let fsa = random_fsa(&cfg);
        let a = flags(&check_spd_observer(&fsa, BUDGET));
        let b = flags(&check_spd_detector(&fsa));
        let c = flags(&check_spd_cc(&fsa));
        prop_assert_eq!(a, b);
        prop_assert_eq!(b, c);
    }

    #[test]
    fn witnesses_replay(cfg in arb_config()) {
        check_witnesses(&random_fsa(&cfg));
    }

    #[test]
    fn spdd_on_all_pairs_is_spd(cfg in arb_config()) {
        let fsa = random_fsa(&cfg);
        let all = SpecPairs::all_off_diagonal(fsa.state_count());
        prop_assert_eq!(
            check_spdd_observer(&fsa, &all, BUDGET).holds,
            check_spd_observer(&fsa, BUDGET).holds
        );
    }

    #[test]
    fn vacuous_implies_holds(cfg in arb_config()) {
        let fsa = random_fsa(&cfg);
        let v = check_spd_detector(&fsa);
        if v.stats.vacuous {
            prop_assert_eq!(v.holds, Some(true));
        }
    }

    #[test]
    fn legacy_agrees_under_assumption(cfg in arb_config()) {
        let fsa = random_fsa(&cfg);
        if fsa.check_assumption1().satisfied() {
            prop_assert_eq!(legacy_check_spd_detector(&fsa).holds, check_spd_detector(&fsa).holds);
            let spec: SpecPairs = SpecPairs::all_off_diagonal(fsa.state_count());
            prop_assert_eq!(
                legacy_check_spdd_observer(&fsa, &spec, BUDGET).holds,
                check_spdd_observer(&fsa, &spec, BUDGET).holds
            );
        }
    }
}
