//! Enumerative checkers built only from the estimate primitive.
//!
//! Nothing here touches `constructions` or `verify`: estimates are
//! recomputed from scratch for every observation word, divergence is found
//! by bounded path enumeration, and cycles by plain depth-first search.

use std::collections::HashMap;

use serde::Serialize;

use super::OracleError;
use crate::automaton::{Fsa, SpecPairs, StateId, StateSet, SymbolId};

/// Largest automaton the enumerative checkers accept.
pub const ORACLE_MAX_STATES: usize = 8;

/// Outcome of an enumerative check. `holds` is the property itself; the two
/// flags are the negation conditions that were found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NaiveVerdict {
    pub holds: bool,
    pub divergent_estimate: bool,
    pub persistent_cycle: bool,
}

pub(crate) fn guard(fsa: &Fsa) -> Result<(), OracleError> {
    if fsa.state_count() > ORACLE_MAX_STATES {
        return Err(OracleError::TooLarge {
            states: fsa.state_count(),
            limit: ORACLE_MAX_STATES,
        });
    }
    Ok(())
}

/// Every distinct nonempty estimate, with the estimate graph between them.
struct EstimateGraph {
    estimates: Vec<StateSet>,
    successors: Vec<Vec<usize>>,
}

fn enumerate_estimates(fsa: &Fsa) -> EstimateGraph {
    let symbols: Vec<SymbolId> = fsa.symbols().collect();
    let mut estimates = Vec::new();
    let mut words: Vec<Vec<SymbolId>> = Vec::new();
    let mut successors: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<StateSet, usize> = HashMap::new();

    let root = fsa
        .current_state_estimate(&[])
        .expect("empty word is always valid");
    if root.is_empty() {
        return EstimateGraph {
            estimates,
            successors,
        };
    }
    index.insert(root.clone(), 0);
    estimates.push(root);
    words.push(Vec::new());
    successors.push(Vec::new());

    let mut i = 0;
    while i < estimates.len() {
        for &sym in &symbols {
            let mut word = words[i].clone();
            word.push(sym);
            let est = fsa
                .current_state_estimate(&word)
                .expect("symbols come from the alphabet");
            if est.is_empty() {
                continue;
            }
            let j = *index.entry(est.clone()).or_insert_with(|| {
                estimates.push(est);
                words.push(word);
                successors.push(Vec::new());
                estimates.len() - 1
            });
            successors[i].push(j);
        }
        i += 1;
    }
    EstimateGraph {
        estimates,
        successors,
    }
}

/// Some silent path of at most `|X| + 1` steps from `x` revisits a state.
fn has_silent_lasso(fsa: &Fsa, x: StateId) -> bool {
    fn walk(fsa: &Fsa, path: &mut Vec<StateId>, depth: usize) -> bool {
        let cur = *path.last().expect("path starts nonempty");
        for &(_, next) in fsa.silent_successors(cur) {
            if path.contains(&next) {
                return true;
            }
            if depth > 0 {
                path.push(next);
                if walk(fsa, path, depth - 1) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    walk(fsa, &mut vec![x], fsa.state_count() + 1)
}

/// Does `start` reach itself through nodes satisfying `keep`?
fn returns_to(graph: &EstimateGraph, start: usize, keep: &dyn Fn(usize) -> bool) -> bool {
    let mut visited = vec![false; graph.estimates.len()];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &graph.successors[v] {
            if w == start {
                return true;
            }
            if keep(w) && !visited[w] {
                visited[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn check(fsa: &Fsa, bad: impl Fn(&StateSet) -> bool) -> NaiveVerdict {
    let graph = enumerate_estimates(fsa);
    let flagged: Vec<bool> = graph.estimates.iter().map(&bad).collect();

    let divergent_estimate = graph
        .estimates
        .iter()
        .zip(&flagged)
        .any(|(est, &f)| f && est.iter().any(|x| has_silent_lasso(fsa, x)));

    let keep = |v: usize| flagged[v];
    let persistent_cycle =
        (0..graph.estimates.len()).any(|s| keep(s) && returns_to(&graph, s, &keep));

    NaiveVerdict {
        holds: !(divergent_estimate || persistent_cycle),
        divergent_estimate,
        persistent_cycle,
    }
}

/// Strong periodic detectability by exhaustive estimate enumeration.
pub fn naive_spd(fsa: &Fsa) -> Result<NaiveVerdict, OracleError> {
    guard(fsa)?;
    Ok(check(fsa, |est| est.len() > 1))
}

/// Strong periodic D-detectability by exhaustive estimate enumeration.
pub fn naive_spdd(fsa: &Fsa, spec: &SpecPairs) -> Result<NaiveVerdict, OracleError> {
    guard(fsa)?;
    let pairs: Vec<(StateId, StateId)> = spec.iter().collect();
    Ok(check(fsa, |est| {
        pairs
            .iter()
            .any(|&(a, b)| est.contains(a) && est.contains(b))
    }))
}
