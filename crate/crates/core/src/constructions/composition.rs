use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::automaton::{EventId, Fsa, Label, StatePair, SymbolId};
use crate::graph::DiGraph;

/// Event of the self-composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairEvent {
    /// Both components move on events with the same output symbol.
    Observable {
        left: EventId,
        right: EventId,
        symbol: SymbolId,
    },
    /// Only the left component moves, silently.
    SilentLeft(EventId),
    /// Only the right component moves, silently.
    SilentRight(EventId),
    /// The added unobservable link from an off-diagonal pair to a diagonal.
    EpsLink,
}

impl PairEvent {
    pub fn symbol(self) -> Option<SymbolId> {
        match self {
            PairEvent::Observable { symbol, .. } => Some(symbol),
            _ => None,
        }
    }

    pub fn is_observable(self) -> bool {
        self.symbol().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CompositionEdge {
    pub source: usize,
    pub event: PairEvent,
    pub target: usize,
}

/// The reachable part of the self-composition, optionally extended with
/// [`PairEvent::EpsLink`] edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionAutomaton {
    nodes: Vec<StatePair>,
    index: HashMap<StatePair, usize>,
    initial: Vec<usize>,
    edges: Vec<CompositionEdge>,
    out: Vec<Vec<usize>>,
    epsilon_extended: bool,
}

impl CompositionAutomaton {
    fn empty(epsilon_extended: bool) -> Self {
        Self {
            nodes: Vec::new(),
            index: HashMap::new(),
            initial: Vec::new(),
            edges: Vec::new(),
            out: Vec::new(),
            epsilon_extended,
        }
    }

    pub fn nodes(&self) -> &[StatePair] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> StatePair {
        self.nodes[index]
    }

    pub fn find(&self, pair: StatePair) -> Option<usize> {
        self.index.get(&pair).copied()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn edges(&self) -> &[CompositionEdge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &CompositionEdge {
        &self.edges[index]
    }

    /// Indices into [`Self::edges`] of the edges leaving `node`.
    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_epsilon_extended(&self) -> bool {
        self.epsilon_extended
    }

    pub fn eps_links(&self) -> impl Iterator<Item = &CompositionEdge> {
        self.edges.iter().filter(|e| e.event == PairEvent::EpsLink)
    }

    fn intern(&mut self, pair: StatePair, queue: &mut VecDeque<usize>) -> usize {
        if let Some(&i) = self.index.get(&pair) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(pair);
        self.out.push(Vec::new());
        self.index.insert(pair, i);
        queue.push_back(i);
        i
    }

    fn add_edge(&mut self, source: usize, event: PairEvent, target: usize) {
        self.out[source].push(self.edges.len());
        self.edges.push(CompositionEdge {
            source,
            event,
            target,
        });
    }
}

/// One-step successors of `pair` in the plain self-composition, computed
/// from the transition rules directly (the pair need not be reachable).
pub fn pair_successors(fsa: &Fsa, pair: StatePair) -> Vec<(PairEvent, StatePair)> {
    let mut out = Vec::new();
    for &(le, lt) in fsa.successors(pair.left) {
        let Label::Symbol(symbol) = fsa.label(le) else {
            continue;
        };
        for (re, rt) in fsa.successors_on(pair.right, symbol) {
            out.push((
                PairEvent::Observable {
                    left: le,
                    right: re,
                    symbol,
                },
                StatePair::new(lt, rt),
            ));
        }
    }
    for &(e, t) in fsa.silent_successors(pair.left) {
        out.push((PairEvent::SilentLeft(e), StatePair::new(t, pair.right)));
    }
    for &(e, t) in fsa.silent_successors(pair.right) {
        out.push((PairEvent::SilentRight(e), StatePair::new(pair.left, t)));
    }
    out
}

/// How an off-diagonal pair is compared with its diagonals when adding
/// unobservable links.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub enum LinkRule {
    /// A diagonal successor counts as matched only if the off-diagonal pair
    /// reaches the same pair with the same output (a symbol, or silence).
    #[default]
    SameLabel,
    /// A diagonal successor counts as matched if the off-diagonal pair
    /// reaches the same pair by any event. Too weak: some detector edges
    /// then have no single-symbol counterpart.
    AnyLabel,
}

/// Diagonal targets of the unobservable links leaving `pair`.
///
/// For an off-diagonal `(x1, x2)` and each of its diagonals `(x, x)`, the
/// link to `(x, x)` exists iff some one-step successor of `(x, x)` is not a
/// one-step successor of `(x1, x2)` with the same output. Diagonal pairs get
/// no links.
pub fn epsilon_links(fsa: &Fsa, pair: StatePair) -> Vec<StatePair> {
    epsilon_links_with(fsa, pair, LinkRule::SameLabel)
}

pub fn epsilon_links_with(fsa: &Fsa, pair: StatePair, rule: LinkRule) -> Vec<StatePair> {
    if pair.is_diagonal() {
        return Vec::new();
    }
    let key = |ev: PairEvent, t: StatePair| match rule {
        LinkRule::SameLabel => (ev.symbol(), t),
        LinkRule::AnyLabel => (None, t),
    };
    let own: HashSet<(Option<SymbolId>, StatePair)> = pair_successors(fsa, pair)
        .into_iter()
        .map(|(ev, t)| key(ev, t))
        .collect();
    [pair.left, pair.right]
        .into_iter()
        .map(|x| StatePair::new(x, x))
        .filter(|&diag| {
            pair_successors(fsa, diag)
                .iter()
                .any(|&(ev, t)| !own.contains(&key(ev, t)))
        })
        .collect()
}

/// Reachable part of the self-composition from `X0 × X0`.
pub fn build_self_composition(fsa: &Fsa) -> CompositionAutomaton {
    let mut cc = CompositionAutomaton::empty(false);
    let mut queue = VecDeque::new();
    for l in fsa.initial() {
        for r in fsa.initial() {
            let i = cc.intern(StatePair::new(l, r), &mut queue);
            cc.initial.push(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for (ev, target) in pair_successors(fsa, cc.nodes[i]) {
            let j = cc.intern(target, &mut queue);
            cc.add_edge(i, ev, j);
        }
    }
    cc
}

/// Adds the unobservable links to `cc` and materializes whatever they make
/// reachable, until every reachable off-diagonal pair has its links.
///
/// `cc` must come from [`build_self_composition`] on the same `fsa`; an
/// already extended automaton is returned unchanged.
pub fn extend_epsilon(cc: &CompositionAutomaton, fsa: &Fsa) -> CompositionAutomaton {
    extend_epsilon_with(cc, fsa, LinkRule::SameLabel)
}

pub fn extend_epsilon_with(
    cc: &CompositionAutomaton,
    fsa: &Fsa,
    rule: LinkRule,
) -> CompositionAutomaton {
    if cc.epsilon_extended {
        return cc.clone();
    }
    let mut out = cc.clone();
    out.epsilon_extended = true;

    let mut expanded = vec![true; out.nodes.len()];
    let mut queue: VecDeque<usize> = (0..out.nodes.len()).collect();
    while let Some(i) = queue.pop_front() {
        if i >= expanded.len() {
            expanded.resize(i + 1, false);
        }
        if !expanded[i] {
            expanded[i] = true;
            for (ev, target) in pair_successors(fsa, out.nodes[i]) {
                let j = out.intern(target, &mut queue);
                out.add_edge(i, ev, j);
            }
        }
        for diag in epsilon_links_with(fsa, out.nodes[i], rule) {
            let j = out.intern(diag, &mut queue);
            out.add_edge(i, PairEvent::EpsLink, j);
        }
    }
    out
}

/// `extend_epsilon(build_self_composition(fsa))`
pub fn build_epsilon_composition(fsa: &Fsa) -> CompositionAutomaton {
    extend_epsilon(&build_self_composition(fsa), fsa)
}

/// Path in the composition that carries exactly one observable edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub symbol: SymbolId,
    /// Edge indices into the composition, in order.
    pub edges: Vec<usize>,
}

/// Graph over the reachable off-diagonal pairs of a composition, with an
/// edge `u -> v` whenever `v` can be reached from `u` by silent steps, one
/// observable step, then silent steps.
#[derive(Debug, Clone)]
pub struct StepGraph {
    pub graph: DiGraph<Segment>,
    /// Composition node of each graph node.
    pub anchors: Vec<usize>,
}

pub fn one_observable_step_graph(cc: &CompositionAutomaton) -> StepGraph {
    let anchors: Vec<usize> = (0..cc.node_count())
        .filter(|&i| !cc.nodes[i].is_diagonal())
        .collect();
    let mut slot = vec![usize::MAX; cc.node_count()];
    for (k, &a) in anchors.iter().enumerate() {
        slot[a] = k;
    }

    let mut graph = DiGraph::new(anchors.len());
    let n = cc.node_count();
    for (k, &u) in anchors.iter().enumerate() {
        // layered BFS: layer 0 before the observable edge, layer 1 after
        let mut parent: [Vec<Option<(usize, usize)>>; 2] = [vec![None; n], vec![None; n]];
        let mut seen = [vec![false; n], vec![false; n]];
        seen[0][u] = true;
        let mut queue = VecDeque::from([(u, 0usize)]);
        let mut order = Vec::new();
        while let Some((v, layer)) = queue.pop_front() {
            if layer == 1 {
                order.push(v);
            }
            for &ei in &cc.out[v] {
                let e = &cc.edges[ei];
                let next_layer = match (e.event.is_observable(), layer) {
                    (false, l) => l,
                    (true, 0) => 1,
                    (true, _) => continue,
                };
                if !seen[next_layer][e.target] {
                    seen[next_layer][e.target] = true;
                    parent[next_layer][e.target] = Some((ei, layer));
                    queue.push_back((e.target, next_layer));
                }
            }
        }
        for v in order {
            if slot[v] == usize::MAX {
                continue;
            }
            let mut edges = Vec::new();
            let (mut cur, mut layer) = (v, 1);
            while let Some((ei, prev_layer)) = parent[layer][cur] {
                edges.push(ei);
                cur = cc.edges[ei].source;
                layer = prev_layer;
            }
            edges.reverse();
            let symbol = edges
                .iter()
                .find_map(|&ei| cc.edges[ei].event.symbol())
                .expect("layer 1 is entered through an observable edge");
            graph.add_edge(k, slot[v], Segment { symbol, edges });
        }
    }
    StepGraph { graph, anchors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::StateId;
    use crate::fixtures::*;

    fn pair(fsa: &Fsa, l: &str, r: &str) -> StatePair {
        StatePair::new(fsa.state_id(l).unwrap(), fsa.state_id(r).unwrap())
    }

    fn has_edge(cc: &CompositionAutomaton, from: StatePair, ev: PairEvent, to: StatePair) -> bool {
        cc.edges()
            .iter()
            .any(|e| cc.node(e.source) == from && e.event == ev && cc.node(e.target) == to)
    }

    fn obs(fsa: &Fsa, l: &str, r: &str) -> PairEvent {
        let left = fsa.event_id(l).unwrap();
        PairEvent::Observable {
            left,
            right: fsa.event_id(r).unwrap(),
            symbol: fsa.label(left).symbol().unwrap(),
        }
    }

    #[test]
    fn s3_self_composition_edges() {
        let fsa = s3();
        let cc = build_self_composition(&fsa);
        assert!(!cc.is_epsilon_extended());
        assert_eq!(cc.eps_links().count(), 0);
        let p = |l, r| pair(&fsa, l, r);
        assert!(has_edge(
            &cc,
            p("x0", "x0"),
            obs(&fsa, "t1", "t2"),
            p("x1", "x2")
        ));
        assert!(has_edge(
            &cc,
            p("x0", "x0"),
            obs(&fsa, "t1", "t1"),
            p("x1", "x1")
        ));
        assert!(has_edge(
            &cc,
            p("x0", "x0"),
            obs(&fsa, "t2", "t1"),
            p("x2", "x1")
        ));
        assert!(has_edge(
            &cc,
            p("x0", "x0"),
            obs(&fsa, "t2", "t2"),
            p("x2", "x2")
        ));
        assert!(has_edge(
            &cc,
            p("x1", "x1"),
            obs(&fsa, "t3", "t3"),
            p("x1", "x1")
        ));
        assert!(has_edge(
            &cc,
            p("x1", "x1"),
            obs(&fsa, "t3", "t4"),
            p("x1", "x2")
        ));
        assert!(has_edge(
            &cc,
            p("x1", "x1"),
            obs(&fsa, "t4", "t3"),
            p("x2", "x1")
        ));
        assert!(has_edge(
            &cc,
            p("x1", "x1"),
            obs(&fsa, "t4", "t4"),
            p("x2", "x2")
        ));
        assert_eq!(cc.node_count(), 5);
        assert_eq!(cc.edges().len(), 8);
    }

    #[test]
    fn label_distinct_deterministic_fsa_stays_on_diagonal() {
        let fsa = Fsa::builder()
            .states(["a", "b", "c"])
            .initial("a")
            .event("e1", Some("x"))
            .event("e2", Some("y"))
            .event("e3", Some("z"))
            .transition("a", "e1", "b")
            .transition("b", "e2", "c")
            .transition("c", "e3", "a")
            .build()
            .unwrap();
        let cc = build_epsilon_composition(&fsa);
        assert!(cc.nodes().iter().all(StatePair::is_diagonal));
        assert_eq!(cc.node_count(), 3);
    }

    #[test]
    fn s2_silent_self_loops() {
        let fsa = s2();
        let cc = build_self_composition(&fsa);
        let t4 = fsa.event_id("t4").unwrap();
        let x22 = pair(&fsa, "x2", "x2");
        assert!(has_edge(&cc, x22, PairEvent::SilentLeft(t4), x22));
        assert!(has_edge(&cc, x22, PairEvent::SilentRight(t4), x22));
        let x12 = pair(&fsa, "x1", "x2");
        assert!(has_edge(&cc, x12, PairEvent::SilentRight(t4), x12));
    }

    #[test]
    fn s3_epsilon_links_are_exact() {
        let fsa = s3();
        let cc = build_epsilon_composition(&fsa);
        let mut links: Vec<(StatePair, StatePair)> = cc
            .eps_links()
            .map(|e| (cc.node(e.source), cc.node(e.target)))
            .collect();
        links.sort();
        let mut expected = vec![
            (pair(&fsa, "x1", "x2"), pair(&fsa, "x1", "x1")),
            (pair(&fsa, "x2", "x1"), pair(&fsa, "x1", "x1")),
        ];
        expected.sort();
        assert_eq!(links, expected);
        assert_eq!(cc.node_count(), 5);
    }

    #[test]
    fn s2_epsilon_links_by_exhaustive_rule_application() {
        // every successor of (x2,x2) is (x2,x2) itself, which (x1,x2) cannot
        // reach in one step, so (x1,x2) and (x2,x1) both link to (x2,x2).
        // (x1,x1) has no successors and attracts no link.
        let fsa = s2();
        let cc = build_epsilon_composition(&fsa);
        let mut links: Vec<(StatePair, StatePair)> = cc
            .eps_links()
            .map(|e| (cc.node(e.source), cc.node(e.target)))
            .collect();
        links.sort();
        let mut expected = vec![
            (pair(&fsa, "x1", "x2"), pair(&fsa, "x2", "x2")),
            (pair(&fsa, "x2", "x1"), pair(&fsa, "x2", "x2")),
        ];
        expected.sort();
        assert_eq!(links, expected);

        // the rule evaluated over all nine pairs, not just reachable ones
        let all: Vec<(StatePair, Vec<StatePair>)> = fsa
            .states()
            .flat_map(|l| fsa.states().map(move |r| StatePair::new(l, r)))
            .map(|p| (p, epsilon_links(&fsa, p)))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let x0 = StateId::new(0);
        let x22 = pair(&fsa, "x2", "x2");
        // (x0,*) pairs link to (x0,x0) since x0 branches; others as above
        for (p, targets) in &all {
            if p.left == x0 || p.right == x0 {
                assert!(targets.contains(&StatePair::new(x0, x0)));
            } else {
                assert_eq!(targets, &vec![x22]);
            }
        }
    }

    #[test]
    fn no_links_when_off_diagonals_simulate_diagonals() {
        // both branches behave identically, so (x1,x2) matches (x1,x1) and (x2,x2)
        let fsa = Fsa::builder()
            .states(["x0", "x1", "x2", "x3"])
            .initial("x0")
            .event("t1", Some("a"))
            .event("t2", Some("a"))
            .event("t3", Some("b"))
            .event("t4", Some("b"))
            .transition("x0", "t1", "x1")
            .transition("x0", "t2", "x2")
            .transition("x1", "t3", "x3")
            .transition("x2", "t4", "x3")
            .build()
            .unwrap();
        let cc = build_self_composition(&fsa);
        let ext = extend_epsilon(&cc, &fsa);
        assert_eq!(ext.eps_links().count(), 0);
        assert_eq!(ext.nodes(), cc.nodes());
        assert_eq!(ext.edges(), cc.edges());
    }

    #[test]
    fn extend_is_idempotent() {
        let fsa = s3();
        let once = build_epsilon_composition(&fsa);
        assert_eq!(extend_epsilon(&once, &fsa), once);
    }

    #[test]
    fn s3_step_graph_has_b_self_loop() {
        let fsa = s3();
        let cc = build_epsilon_composition(&fsa);
        let step = one_observable_step_graph(&cc);
        let x12 = cc.find(pair(&fsa, "x1", "x2")).unwrap();
        let k = step.anchors.iter().position(|&a| a == x12).unwrap();
        let seg = step.graph.edge(k, k).expect("(x1,x2) -> (x1,x2)");
        assert_eq!(seg.symbol, fsa.symbol_id("b").unwrap());
        let events: Vec<PairEvent> = seg.edges.iter().map(|&e| cc.edge(e).event).collect();
        assert_eq!(events, vec![PairEvent::EpsLink, obs(&fsa, "t3", "t4")]);
    }

    #[test]
    fn step_graph_without_observable_edges_is_edgeless() {
        let fsa = Fsa::builder()
            .states(["a", "b"])
            .initial("a")
            .initial("b")
            .event("u", None)
            .transition("a", "u", "b")
            .build()
            .unwrap();
        let step = one_observable_step_graph(&build_epsilon_composition(&fsa));
        assert!(!step.anchors.is_empty());
        assert_eq!(step.graph.edge_count(), 0);
    }

    #[test]
    fn s2_step_graph_is_edgeless() {
        let fsa = s2();
        let cc = build_epsilon_composition(&fsa);
        let step = one_observable_step_graph(&cc);
        let anchors: Vec<StatePair> = step.anchors.iter().map(|&a| cc.node(a)).collect();
        assert_eq!(anchors.len(), 2);
        assert!(anchors.contains(&pair(&fsa, "x1", "x2")));
        assert!(anchors.contains(&pair(&fsa, "x2", "x1")));
        assert_eq!(step.graph.edge_count(), 0);
    }

    #[test]
    fn matching_target_on_another_symbol_still_links() {
        // (x0,x0) reaches (x0,x0) on b; (x0,x1) reaches it only on a
        let fsa = Fsa::builder()
            .states(["x0", "x1"])
            .initial("x1")
            .event("t0", Some("b"))
            .event("t1", Some("a"))
            .event("t2", Some("a"))
            .event("t3", Some("a"))
            .transition("x0", "t0", "x0")
            .transition("x0", "t1", "x1")
            .transition("x0", "t2", "x1")
            .transition("x0", "t3", "x0")
            .transition("x1", "t3", "x0")
            .transition("x1", "t3", "x1")
            .build()
            .unwrap();
        let p01 = pair(&fsa, "x0", "x1");
        assert_eq!(epsilon_links(&fsa, p01), vec![pair(&fsa, "x0", "x0")]);
        assert!(epsilon_links_with(&fsa, p01, LinkRule::AnyLabel).is_empty());
    }
}
