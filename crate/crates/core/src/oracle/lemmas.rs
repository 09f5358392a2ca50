//! Exhaustive checks of two structural lemmas:
//!
//! - lifting: every observer edge `(q, σ, q')` and every admissible
//!   `q̄' ⊆ q'` (two states, or `q'` itself when it is a singleton) has a
//!   detector edge `(q̄, σ, q̄')` from some admissible `q̄ ⊆ q`;
//! - simulation: every detector edge between sets of size one or two is
//!   matched by a single-symbol path of the ε-extended self-composition,
//!   and every run of that composition projects into the observer.
//!
//! Both are proved facts, so a counterexample means an implementation bug.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::naive::guard;
use super::OracleError;
use crate::automaton::{Fsa, StatePair, StateSet, SymbolId};
use crate::constructions::{
    build_detector, build_epsilon_composition, build_observer, detector_successors, epsilon_links,
    pair_successors, ConstructionError, PairEvent,
};

/// Observer bound large enough for any automaton the oracle accepts.
const OBSERVER_BUDGET: usize = 1 << super::ORACLE_MAX_STATES;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftingCounterexample {
    pub source: StateSet,
    pub symbol: SymbolId,
    pub target: StateSet,
    /// The part of `target` no detector edge from inside `source` reaches.
    pub sub_target: StateSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SimulationCounterexample {
    /// A detector edge with no matching composition path from `from`.
    Unmatched {
        source: StateSet,
        symbol: SymbolId,
        target: StateSet,
        from: StatePair,
    },
    /// A reachable composition pair outside the observer node reached by the
    /// same observation (`None` when the observer has no such node).
    Projection {
        pair: StatePair,
        observer_node: Option<StateSet>,
    },
}

fn admissible_subsets(q: &StateSet) -> Vec<StateSet> {
    if q.len() >= 2 {
        q.pairs().collect()
    } else {
        vec![q.clone()]
    }
}

/// `Ok(None)` if the lifting lemma holds on every observer edge.
pub fn check_lifting(fsa: &Fsa) -> Result<Option<LiftingCounterexample>, OracleError> {
    guard(fsa)?;
    let obs = match build_observer(fsa, OBSERVER_BUDGET) {
        Ok(obs) => obs,
        Err(ConstructionError::EmptyInitial) => return Ok(None),
        Err(e) => unreachable!("observer of a guarded automaton: {e}"),
    };
    for (q, sym, t) in obs.edges() {
        let (q, t) = (obs.node(q), obs.node(t));
        let sources = admissible_subsets(q);
        for sub_target in admissible_subsets(t) {
            let lifted = sources
                .iter()
                .any(|src| detector_successors(fsa, src, sym).contains(&sub_target));
            if !lifted {
                return Ok(Some(LiftingCounterexample {
                    source: q.clone(),
                    symbol: sym,
                    target: t.clone(),
                    sub_target,
                }));
            }
        }
    }
    Ok(None)
}

/// Shortest path in the ε-extended self-composition from `from` to `to`
/// whose only observable edge carries `symbol`. Evaluated from the
/// transition rules, so neither end needs to be reachable.
pub fn observable_sequence(
    fsa: &Fsa,
    from: StatePair,
    symbol: SymbolId,
    to: StatePair,
) -> Option<Vec<(PairEvent, StatePair)>> {
    let step = |p: StatePair| {
        let mut out = pair_successors(fsa, p);
        out.extend(
            epsilon_links(fsa, p)
                .into_iter()
                .map(|d| (PairEvent::EpsLink, d)),
        );
        out
    };
    type Node = (StatePair, bool);
    let mut parent: std::collections::HashMap<Node, (Node, PairEvent)> = Default::default();
    let mut seen: HashSet<Node> = HashSet::from([(from, false)]);
    let mut queue = VecDeque::from([(from, false)]);
    while let Some(node @ (p, crossed)) = queue.pop_front() {
        if crossed && p == to {
            let mut path = Vec::new();
            let mut cur = node;
            while let Some(&(prev, ev)) = parent.get(&cur) {
                path.push((ev, cur.0));
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for (ev, next) in step(p) {
            let next_crossed = match ev.symbol() {
                None => crossed,
                Some(s) if s == symbol && !crossed => true,
                Some(_) => continue,
            };
            let n = (next, next_crossed);
            if seen.insert(n) {
                parent.insert(n, (node, ev));
                queue.push_back(n);
            }
        }
    }
    None
}

/// `Ok(None)` if every detector edge is simulated by the composition and
/// every composition run projects into the observer.
pub fn check_simulation(fsa: &Fsa) -> Result<Option<SimulationCounterexample>, OracleError> {
    guard(fsa)?;
    let det = build_detector(fsa);
    for &(q, sym, t) in det.edges() {
        let (q, t) = (det.node(q), det.node(t));
        if q.len() > 2 {
            continue;
        }
        let sources: Vec<StatePair> = match q.as_slice() {
            [a] => vec![StatePair::new(*a, *a)],
            [a, b] => vec![StatePair::new(*a, *b), StatePair::new(*b, *a)],
            _ => unreachable!(),
        };
        let targets: Vec<StatePair> = match (q.len(), t.as_slice()) {
            (_, &[c]) => vec![StatePair::new(c, c)],
            (2, &[c, d]) => vec![StatePair::new(c, d), StatePair::new(d, c)],
            (1, &[c, d]) => vec![StatePair::new(c, d)],
            _ => unreachable!("detector targets have one or two states"),
        };
        for &from in &sources {
            let matched = targets
                .iter()
                .any(|&to| observable_sequence(fsa, from, sym, to).is_some());
            if !matched {
                return Ok(Some(SimulationCounterexample::Unmatched {
                    source: q.clone(),
                    symbol: sym,
                    target: t.clone(),
                    from,
                }));
            }
        }
    }

    // projection: explore (composition node, observer node) jointly
    let cc = build_epsilon_composition(fsa);
    let obs = match build_observer(fsa, OBSERVER_BUDGET) {
        Ok(obs) => obs,
        Err(ConstructionError::EmptyInitial) => return Ok(None),
        Err(e) => unreachable!("observer of a guarded automaton: {e}"),
    };
    let root = obs.initial().expect("nonempty observer");
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &i in cc.initial() {
        if seen.insert((i, root)) {
            queue.push_back((i, root));
        }
    }
    while let Some((i, o)) = queue.pop_front() {
        let pair = cc.node(i);
        let est = obs.node(o);
        if !(est.contains(pair.left) && est.contains(pair.right)) {
            return Ok(Some(SimulationCounterexample::Projection {
                pair,
                observer_node: Some(est.clone()),
            }));
        }
        for &ei in cc.out_edges(i) {
            let e = cc.edge(ei);
            let next_o = match e.event.symbol() {
                None => o,
                Some(sym) => match obs.successor(o, sym) {
                    Some(n) => n,
                    None => {
                        return Ok(Some(SimulationCounterexample::Projection {
                            pair: cc.node(e.target),
                            observer_node: None,
                        }))
                    }
                },
            };
            if seen.insert((e.target, next_o)) {
                queue.push_back((e.target, next_o));
            }
        }
    }
    Ok(None)
}
