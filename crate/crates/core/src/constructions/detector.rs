use std::collections::{HashMap, VecDeque};

use crate::automaton::{Fsa, StateSet, SymbolId};
use crate::graph::DiGraph;

/// The nondeterministic detector: every node other than the initial one has
/// at most two states.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Detector {
    nodes: Vec<StateSet>,
    initial: Option<usize>,
    edges: Vec<(usize, SymbolId, usize)>,
}

impl Detector {
    pub fn nodes(&self) -> &[StateSet] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &StateSet {
        &self.nodes[index]
    }

    /// Node for `UR(X0)`, kept whole even when it has more than two states.
    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted, duplicate-free `(source, symbol, target)` triples.
    pub fn edges(&self) -> &[(usize, SymbolId, usize)] {
        &self.edges
    }

    pub fn find(&self, set: &StateSet) -> Option<usize> {
        self.nodes.iter().position(|n| n == set)
    }

    pub fn to_graph(&self) -> DiGraph<SymbolId> {
        let mut g = DiGraph::new(self.nodes.len());
        for &(q, s, t) in &self.edges {
            g.add_edge(q, t, s);
        }
        g
    }
}

/// Detector successors of `q` under `symbol`: with `R = UR(Reach_σ(q))`,
/// every 2-subset of `R` when `|R| > 1`, `R` itself when `|R| = 1`, and
/// nothing when `R` is empty.
pub fn detector_successors(fsa: &Fsa, q: &StateSet, symbol: SymbolId) -> Vec<StateSet> {
    let r = fsa.observe(q, symbol);
    match r.len() {
        0 => Vec::new(),
        1 => vec![r],
        _ => r.pairs().collect(),
    }
}

pub fn build_detector(fsa: &Fsa) -> Detector {
    let root = fsa.unobservable_reach(fsa.initial());
    if root.is_empty() {
        return Detector::default();
    }
    let mut det = Detector {
        nodes: vec![root.clone()],
        initial: Some(0),
        edges: Vec::new(),
    };
    let mut index: HashMap<StateSet, usize> = HashMap::from([(root, 0)]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(q) = queue.pop_front() {
        for sym in fsa.symbols() {
            for next in detector_successors(fsa, &det.nodes[q], sym) {
                let t = *index.entry(next.clone()).or_insert_with(|| {
                    det.nodes.push(next);
                    queue.push_back(det.nodes.len() - 1);
                    det.nodes.len() - 1
                });
                det.edges.push((q, sym, t));
            }
        }
    }
    det.edges.sort_unstable();
    det.edges.dedup();
    det
}
