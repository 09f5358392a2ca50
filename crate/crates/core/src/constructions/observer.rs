use std::collections::{BTreeMap, HashMap, VecDeque};

use super::ConstructionError;
use crate::automaton::{Fsa, StateSet, SymbolId};
use crate::graph::DiGraph;

/// The deterministic powerset automaton over current-state estimates.
///
/// Only the part reachable from the initial estimate is materialized; every
/// node is nonempty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Observer {
    nodes: Vec<StateSet>,
    initial: Option<usize>,
    edges: BTreeMap<(usize, SymbolId), usize>,
}

impl Observer {
    pub fn nodes(&self) -> &[StateSet] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &StateSet {
        &self.nodes[index]
    }

    /// `None` only for the empty observer.
    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(source, symbol, target)`, ordered by source then symbol.
    pub fn edges(&self) -> impl Iterator<Item = (usize, SymbolId, usize)> + '_ {
        self.edges.iter().map(|(&(q, s), &t)| (q, s, t))
    }

    pub fn successor(&self, node: usize, symbol: SymbolId) -> Option<usize> {
        self.edges.get(&(node, symbol)).copied()
    }

    pub fn find(&self, set: &StateSet) -> Option<usize> {
        self.nodes.iter().position(|n| n == set)
    }

    /// Follows `word` from the initial node; `None` once no edge exists.
    pub fn run(&self, word: &[SymbolId]) -> Option<usize> {
        word.iter()
            .try_fold(self.initial?, |q, &sym| self.successor(q, sym))
    }

    pub fn to_graph(&self) -> DiGraph<SymbolId> {
        let mut g = DiGraph::new(self.nodes.len());
        for (q, s, t) in self.edges() {
            g.add_edge(q, t, s);
        }
        g
    }
}

/// Breadth-first subset construction from `UR(X0)`.
///
/// Fails with [`ConstructionError::BudgetExceeded`] as soon as a node beyond
/// `max_nodes` would be created.
pub fn build_observer(fsa: &Fsa, max_nodes: usize) -> Result<Observer, ConstructionError> {
    let root = fsa.unobservable_reach(fsa.initial());
    if root.is_empty() {
        return Err(ConstructionError::EmptyInitial);
    }
    if max_nodes == 0 {
        return Err(ConstructionError::BudgetExceeded {
            limit: max_nodes,
            built: 0,
        });
    }

    let mut obs = Observer {
        nodes: vec![root.clone()],
        initial: Some(0),
        edges: BTreeMap::new(),
    };
    let mut index: HashMap<StateSet, usize> = HashMap::from([(root, 0)]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(q) = queue.pop_front() {
        for sym in fsa.symbols() {
            let next = fsa.observe(&obs.nodes[q], sym);
            if next.is_empty() {
                continue;
            }
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if obs.nodes.len() >= max_nodes {
                        return Err(ConstructionError::BudgetExceeded {
                            limit: max_nodes,
                            built: obs.nodes.len(),
                        });
                    }
                    let t = obs.nodes.len();
                    index.insert(next.clone(), t);
                    obs.nodes.push(next);
                    queue.push_back(t);
                    t
                }
            };
            obs.edges.insert((q, sym), target);
        }
    }
    Ok(obs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn s1_observer() {
        let fsa = s1();
        let obs = build_observer(&fsa, 100).unwrap();
        let a = fsa.symbol_id("a").unwrap();
        assert_eq!(obs.nodes(), &[set(&fsa, &["x0"]), set(&fsa, &["x1", "x2"])]);
        assert_eq!(obs.edges().collect::<Vec<_>>(), vec![(0, a, 1), (1, a, 1)]);
    }

    #[test]
    fn s2_observer() {
        let fsa = s2();
        let obs = build_observer(&fsa, 100).unwrap();
        let a = fsa.symbol_id("a").unwrap();
        assert_eq!(obs.nodes(), &[set(&fsa, &["x0"]), set(&fsa, &["x1", "x2"])]);
        assert_eq!(obs.edges().collect::<Vec<_>>(), vec![(0, a, 1)]);
    }

    #[test]
    fn deterministic_observable_fsa_is_its_own_observer() {
        // a -x-> b -y-> c -x-> a, c -y-> c, d unreachable
        let fsa = Fsa::builder()
            .states(["a", "b", "c", "d"])
            .initial("a")
            .event("e1", Some("x"))
            .event("e2", Some("y"))
            .event("e3", Some("x"))
            .event("e4", Some("y"))
            .transition("a", "e1", "b")
            .transition("b", "e2", "c")
            .transition("c", "e3", "a")
            .transition("c", "e4", "c")
            .transition("d", "e1", "a")
            .build()
            .unwrap();
        let obs = build_observer(&fsa, 100).unwrap();
        assert_eq!(obs.node_count(), 3);
        assert!(obs.nodes().iter().all(StateSet::is_singleton));
        // relabel each transition by its output and compare edge sets
        let mut expected: Vec<(StateSet, SymbolId, StateSet)> = fsa
            .transitions()
            .iter()
            .filter(|t| fsa.reachable_states().contains(t.source))
            .map(|t| {
                (
                    StateSet::singleton(t.source),
                    fsa.label(t.event).symbol().unwrap(),
                    StateSet::singleton(t.target),
                )
            })
            .collect();
        expected.sort();
        let mut got: Vec<_> = obs
            .edges()
            .map(|(q, s, t)| (obs.node(q).clone(), s, obs.node(t).clone()))
            .collect();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn budget_and_empty_initial() {
        let fsa = s1();
        assert_eq!(
            build_observer(&fsa, 1),
            Err(ConstructionError::BudgetExceeded { limit: 1, built: 1 })
        );
        assert!(build_observer(&fsa, 2).is_ok());

        let empty = Fsa::builder().states(["x"]).build().unwrap();
        assert_eq!(
            build_observer(&empty, 10),
            Err(ConstructionError::EmptyInitial)
        );
    }

    #[test]
    fn run_follows_estimates() {
        let fsa = s3();
        let obs = build_observer(&fsa, 100).unwrap();
        let (a, b) = (fsa.symbol_id("a").unwrap(), fsa.symbol_id("b").unwrap());
        let q = obs.run(&[a, b, b]).unwrap();
        assert_eq!(obs.node(q), &set(&fsa, &["x1", "x2"]));
        assert_eq!(obs.run(&[b]), None);
    }
}
