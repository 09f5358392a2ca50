//! Decision procedures for strong periodic (D-)detectability.
//!
//! Every assumption-free check evaluates two negation conditions, never
//! short-circuiting, and the property holds iff neither fires:
//!
//! 1. some reachable estimate that is not yet good enough (more than one
//!    state, or hitting a specified pair) contains a divergent state, so the
//!    system may stop producing observations while still confused;
//! 2. some reachable cycle keeps the estimate not good enough forever.
//!
//! The legacy checks drop condition 1 and are only sound for deadlock-free,
//! divergence-free systems; their verdicts carry the corresponding report.

mod verdict;

use std::collections::VecDeque;
use std::time::Instant;

pub use verdict::{Condition, Method, PairSegment, Property, Stats, Verdict, Witness};

use crate::automaton::{Fsa, SpecPairs, StateSet, SymbolId};
use crate::constructions::{
    build_detector, build_epsilon_composition, build_observer, one_observable_step_graph,
    ConstructionError, Observer,
};
use crate::graph::{self, DiGraph};

fn observer_or_verdict(
    fsa: &Fsa,
    max_nodes: usize,
    property: Property,
    method: Method,
    start: Instant,
) -> Result<Observer, Verdict> {
    match build_observer(fsa, max_nodes) {
        Ok(obs) => Ok(obs),
        Err(ConstructionError::EmptyInitial) => Ok(Observer::default()),
        Err(ConstructionError::BudgetExceeded { built, .. }) => Err(Verdict {
            property,
            method,
            holds: None,
            conditions: Vec::new(),
            stats: Stats {
                nodes: built,
                edges: 0,
                elapsed: start.elapsed(),
                vacuous: !fsa.has_infinite_run(),
            },
            assumption1: None,
        }),
    }
}

/// Symbols along a shortest path from `from` to `to`.
fn word_to(g: &DiGraph<SymbolId>, from: usize, to: usize) -> Vec<SymbolId> {
    let mut parent: Vec<Option<(usize, SymbolId)>> = vec![None; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, sym) in g.edges_from(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, sym));
                queue.push_back(w);
            }
        }
    }
    let mut word = Vec::new();
    let mut cur = to;
    while let Some((p, sym)) = parent[cur] {
        word.push(sym);
        cur = p;
    }
    word.reverse();
    word
}

/// Condition 1 over a set-valued construction.
fn divergent_set_condition(
    fsa: &Fsa,
    nodes: &[StateSet],
    g: &DiGraph<SymbolId>,
    initial: Option<usize>,
    name: &'static str,
    bad: impl Fn(&StateSet) -> bool,
) -> Condition {
    let div = fsa.divergent_states();
    let witness = nodes.iter().enumerate().find_map(|(i, q)| {
        if !bad(q) {
            return None;
        }
        let state = q.iter().find(|&s| div.contains(s))?;
        let lasso = fsa
            .silent_lasso(state)
            .expect("divergent state has a lasso");
        Some(Witness::DivergentSet {
            node: q.clone(),
            word: initial.map(|r| word_to(g, r, i)).unwrap_or_default(),
            lasso,
        })
    });
    Condition::new(1, name, witness)
}

fn set_cycle(nodes: &[StateSet], g: &DiGraph<SymbolId>, walk: Vec<usize>) -> Witness {
    let symbols = walk
        .windows(2)
        .map(|w| {
            *g.edge(w[0], w[1])
                .expect("consecutive walk nodes are adjacent")
        })
        .collect();
    Witness::SetCycle {
        nodes: walk.into_iter().map(|v| nodes[v].clone()).collect(),
        symbols,
    }
}

/// Condition 2 over a set-valued construction.
fn set_cycle_condition(
    nodes: &[StateSet],
    g: &DiGraph<SymbolId>,
    name: &'static str,
    keep: impl Fn(&StateSet) -> bool,
) -> Condition {
    let walk = graph::cycle_within(g, |v| keep(&nodes[v]));
    Condition::new(2, name, walk.map(|w| set_cycle(nodes, g, w)))
}

fn finish(
    fsa: &Fsa,
    property: Property,
    method: Method,
    conditions: Vec<Condition>,
    (nodes, edges): (usize, usize),
    start: Instant,
) -> Verdict {
    let holds = conditions.iter().all(|c| !c.fired);
    Verdict {
        property,
        method,
        holds: Some(holds),
        conditions,
        stats: Stats {
            nodes,
            edges,
            elapsed: start.elapsed(),
            vacuous: !fsa.has_infinite_run(),
        },
        assumption1: None,
    }
}

/// SPD on the powerset observer. `holds` is `None` when the observer needs
/// more than `max_nodes` nodes.
pub fn check_spd_observer(fsa: &Fsa, max_nodes: usize) -> Verdict {
    let start = Instant::now();
    let obs = match observer_or_verdict(fsa, max_nodes, Property::Spd, Method::Observer, start) {
        Ok(obs) => obs,
        Err(v) => return v,
    };
    let g = obs.to_graph();
    let confused = |q: &StateSet| q.len() > 1;
    let conditions = vec![
        divergent_set_condition(
            fsa,
            obs.nodes(),
            &g,
            obs.initial(),
            "divergent non-singleton estimate",
            confused,
        ),
        set_cycle_condition(obs.nodes(), &g, "non-singleton cycle", confused),
    ];
    finish(
        fsa,
        Property::Spd,
        Method::Observer,
        conditions,
        (obs.node_count(), obs.edge_count()),
        start,
    )
}

/// SPD on the detector, in polynomial time.
pub fn check_spd_detector(fsa: &Fsa) -> Verdict {
    let start = Instant::now();
    let det = build_detector(fsa);
    let g = det.to_graph();
    let conditions = vec![
        divergent_set_condition(
            fsa,
            det.nodes(),
            &g,
            det.initial(),
            "divergent non-singleton node",
            |q| q.len() > 1,
        ),
        set_cycle_condition(det.nodes(), &g, "two-state cycle", |q| q.len() == 2),
    ];
    finish(
        fsa,
        Property::Spd,
        Method::Detector,
        conditions,
        (det.node_count(), det.edge_count()),
        start,
    )
}

/// SPD on the ε-extended self-composition, in polynomial time.
pub fn check_spd_cc(fsa: &Fsa) -> Verdict {
    let start = Instant::now();
    let cc = build_epsilon_composition(fsa);
    let div = fsa.divergent_states();

    let cond1 = cc
        .nodes()
        .iter()
        .find(|p| !p.is_diagonal() && div.contains(p.left))
        .map(|&pair| Witness::DivergentPair {
            pair,
            lasso: fsa
                .silent_lasso(pair.left)
                .expect("divergent state has a lasso"),
        });

    let step = one_observable_step_graph(&cc);
    let cond2 = graph::cycle_within(&step.graph, |_| true).map(|walk| {
        let segments = walk
            .windows(2)
            .map(|w| {
                let seg = step.graph.edge(w[0], w[1]).expect("adjacent");
                PairSegment {
                    symbol: seg.symbol,
                    steps: seg
                        .edges
                        .iter()
                        .map(|&ei| {
                            let e = cc.edge(ei);
                            (e.event, cc.node(e.target))
                        })
                        .collect(),
                }
            })
            .collect();
        Witness::PairCycle {
            pairs: walk.iter().map(|&v| cc.node(step.anchors[v])).collect(),
            segments,
        }
    });

    let conditions = vec![
        Condition::new(1, "divergent off-diagonal pair", cond1),
        Condition::new(2, "observable off-diagonal cycle", cond2),
    ];
    finish(
        fsa,
        Property::Spd,
        Method::CcEpsilon,
        conditions,
        (cc.node_count(), cc.edges().len()),
        start,
    )
}

/// SPDD on the powerset observer against the pairs in `spec`.
pub fn check_spdd_observer(fsa: &Fsa, spec: &SpecPairs, max_nodes: usize) -> Verdict {
    let start = Instant::now();
    let obs = match observer_or_verdict(fsa, max_nodes, Property::Spdd, Method::Observer, start) {
        Ok(obs) => obs,
        Err(v) => return v,
    };
    let g = obs.to_graph();
    let hit = |q: &StateSet| spec.hits(q);
    let conditions = vec![
        divergent_set_condition(
            fsa,
            obs.nodes(),
            &g,
            obs.initial(),
            "divergent specified estimate",
            hit,
        ),
        set_cycle_condition(obs.nodes(), &g, "specified cycle", hit),
    ];
    finish(
        fsa,
        Property::Spdd,
        Method::Observer,
        conditions,
        (obs.node_count(), obs.edge_count()),
        start,
    )
}

fn with_assumption1(mut v: Verdict, fsa: &Fsa) -> Verdict {
    v.assumption1 = Some(fsa.check_assumption1());
    v
}

/// SPD as decided when every reachable cycle of the detector must contain a
/// singleton. Wrong on systems that deadlock or diverge.
pub fn legacy_check_spd_detector(fsa: &Fsa) -> Verdict {
    let start = Instant::now();
    let det = build_detector(fsa);
    let g = det.to_graph();
    let conditions = vec![set_cycle_condition(
        det.nodes(),
        &g,
        "two-state cycle",
        |q| q.len() == 2,
    )];
    let v = finish(
        fsa,
        Property::Spd,
        Method::LegacyDetector,
        conditions,
        (det.node_count(), det.edge_count()),
        start,
    );
    with_assumption1(v, fsa)
}

/// SPDD as decided when every reachable observer cycle must contain an
/// estimate avoiding `spec`. Wrong on systems that deadlock or diverge.
pub fn legacy_check_spdd_observer(fsa: &Fsa, spec: &SpecPairs, max_nodes: usize) -> Verdict {
    let start = Instant::now();
    let obs = match observer_or_verdict(
        fsa,
        max_nodes,
        Property::Spdd,
        Method::LegacyObserver,
        start,
    ) {
        Ok(obs) => obs,
        Err(v) => return with_assumption1(v, fsa),
    };
    let g = obs.to_graph();
    let conditions = vec![set_cycle_condition(
        obs.nodes(),
        &g,
        "specified cycle",
        |q| spec.hits(q),
    )];
    let v = finish(
        fsa,
        Property::Spdd,
        Method::LegacyObserver,
        conditions,
        (obs.node_count(), obs.edge_count()),
        start,
    );
    with_assumption1(v, fsa)
}

/// Strong detectability as decided when every detector node reachable from
/// a reachable cycle must be a singleton.
pub fn legacy_check_sd_detector(fsa: &Fsa) -> Verdict {
    let start = Instant::now();
    let det = build_detector(fsa);
    let g = det.to_graph();
    let comps = graph::tarjan_scc(&g);
    let on_cycle: Vec<usize> = (0..g.node_count())
        .filter(|&v| {
            let c = comps.component_of(v).expect("unfiltered");
            comps.components[c].len() > 1 || g.has_edge(v, v)
        })
        .collect();

    let witness = on_cycle.iter().find_map(|&c| {
        let bad = graph::reachable_from(&g, [c])
            .into_iter()
            .find(|&v| !det.node(v).is_singleton())?;
        let cycle = graph::cycle_within(&g, |v| comps.component_of(v) == comps.component_of(c))
            .expect("component is cyclic");
        let Witness::SetCycle { nodes, symbols } = set_cycle(det.nodes(), &g, cycle) else {
            unreachable!()
        };
        let from = det.find(&nodes[0]).expect("cycle nodes are detector nodes");
        Some(Witness::AfterCycle {
            cycle: nodes,
            symbols,
            word: word_to(&g, from, bad),
            node: det.node(bad).clone(),
        })
    });
    let conditions = vec![Condition::new(1, "non-singleton after cycle", witness)];
    let v = finish(
        fsa,
        Property::SdLegacy,
        Method::LegacyDetector,
        conditions,
        (det.node_count(), det.edge_count()),
        start,
    );
    with_assumption1(v, fsa)
}

#[cfg(test)]
mod tests;
