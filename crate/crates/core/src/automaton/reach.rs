use std::collections::VecDeque;

use serde::Serialize;

use super::{EventId, Fsa, ModelError, StateId, StateSet, SymbolId};
use crate::graph::{self, DiGraph};

/// A silent run `start -stem-> entry -cycle-> entry`, proof that `start`
/// can stay unobserved forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SilentLasso {
    pub start: StateId,
    pub stem: Vec<(EventId, StateId)>,
    /// Nonempty; ends where it starts.
    pub cycle: Vec<(EventId, StateId)>,
}

impl SilentLasso {
    pub fn entry(&self) -> StateId {
        self.stem.last().map_or(self.start, |&(_, s)| s)
    }

    /// Checks that every step is a silent transition of `fsa` and that the
    /// cycle closes.
    pub fn replays_in(&self, fsa: &Fsa) -> bool {
        let mut cur = self.start;
        for &(e, next) in self.stem.iter().chain(&self.cycle) {
            if !fsa.silent_successors(cur).contains(&(e, next)) {
                return false;
            }
            cur = next;
        }
        !self.cycle.is_empty() && cur == self.entry()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

/// Deadlock-freeness and divergence-freeness of the reachable part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assumption1Report {
    /// Witness: a reachable state with no outgoing transition.
    pub deadlock_free: CheckResult<StateId>,
    /// Witness: a reachable silent cycle, as a closed state walk.
    pub divergence_free: CheckResult<Vec<StateId>>,
}

impl Assumption1Report {
    pub fn satisfied(&self) -> bool {
        self.deadlock_free.holds && self.divergence_free.holds
    }
}

impl Fsa {
    /// All states reachable from `from` by zero or more silent transitions.
    pub fn unobservable_reach(&self, from: &StateSet) -> StateSet {
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<StateId> = Vec::new();
        for s in from {
            if !seen[s.index()] {
                seen[s.index()] = true;
                stack.push(s);
            }
        }
        while let Some(s) = stack.pop() {
            for &(_, t) in self.silent_successors(s) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    stack.push(t);
                }
            }
        }
        collect_marked(&seen)
    }

    /// States entered by one transition labelled `symbol` from `from`.
    pub fn observable_reach(
        &self,
        from: &StateSet,
        symbol: SymbolId,
    ) -> Result<StateSet, ModelError> {
        if symbol.index() >= self.symbol_count() {
            return Err(ModelError::SymbolOutOfRange(symbol.index()));
        }
        Ok(self.step(from, symbol))
    }

    pub(crate) fn step(&self, from: &StateSet, symbol: SymbolId) -> StateSet {
        from.iter()
            .flat_map(|s| self.successors_on(s, symbol).map(|(_, t)| t))
            .collect()
    }

    /// `UR(Reach_σ(from))`
    pub fn observe(&self, from: &StateSet, symbol: SymbolId) -> StateSet {
        self.unobservable_reach(&self.step(from, symbol))
    }

    /// The set of states the system can be in after `observation` was seen.
    /// Empty iff the observation cannot be produced.
    pub fn current_state_estimate(&self, observation: &[SymbolId]) -> Result<StateSet, ModelError> {
        let mut est = self.unobservable_reach(self.initial());
        for &sym in observation {
            est = self.unobservable_reach(&self.observable_reach(&est, sym)?);
        }
        Ok(est)
    }

    fn silent_graph(&self) -> DiGraph {
        let mut g = DiGraph::new(self.state_count());
        for s in self.states() {
            for &(_, t) in self.silent_successors(s) {
                g.add_edge(s.index(), t.index(), ());
            }
        }
        g
    }

    /// States on some silent cycle (including silent self-loops).
    fn silent_cyclic_states(&self) -> Vec<bool> {
        let g = self.silent_graph();
        let sccs = graph::tarjan_scc(&g);
        let mut cyclic = vec![false; self.state_count()];
        for comp in &sccs.components {
            if comp.len() > 1 || g.has_edge(comp[0], comp[0]) {
                for &v in comp {
                    cyclic[v] = true;
                }
            }
        }
        cyclic
    }

    /// States admitting an infinite silent run: those on a silent cycle,
    /// closed backwards under silent transitions.
    pub fn divergent_states(&self) -> StateSet {
        let mut div = self.silent_cyclic_states();
        let mut stack: Vec<StateId> = self.states().filter(|s| div[s.index()]).collect();
        while let Some(s) = stack.pop() {
            for &p in self.silent_predecessors(s) {
                if !div[p.index()] {
                    div[p.index()] = true;
                    stack.push(p);
                }
            }
        }
        collect_marked(&div)
    }

    /// A silent lasso starting at `start`, if `start` is divergent.
    pub fn silent_lasso(&self, start: StateId) -> Option<SilentLasso> {
        let cyclic = self.silent_cyclic_states();
        let n = self.state_count();

        // shortest silent path to a cyclic state
        let mut parent: Vec<Option<(EventId, StateId)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[start.index()] = true;
        let mut queue = VecDeque::from([start]);
        let mut entry = None;
        while let Some(s) = queue.pop_front() {
            if cyclic[s.index()] {
                entry = Some(s);
                break;
            }
            for &(e, t) in self.silent_successors(s) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    parent[t.index()] = Some((e, s));
                    queue.push_back(t);
                }
            }
        }
        let entry = entry?;
        let mut stem = Vec::new();
        let mut cur = entry;
        while let Some((e, p)) = parent[cur.index()] {
            stem.push((e, cur));
            cur = p;
        }
        stem.reverse();

        // shortest silent cycle through the entry
        let mut parent: Vec<Option<(EventId, StateId)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &(e, t) in self.silent_successors(entry) {
            if t == entry {
                return Some(SilentLasso {
                    start,
                    stem,
                    cycle: vec![(e, entry)],
                });
            }
            if !seen[t.index()] {
                seen[t.index()] = true;
                parent[t.index()] = Some((e, entry));
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &(e, t) in self.silent_successors(s) {
                if t == entry {
                    let mut cycle = vec![(e, entry)];
                    let mut cur = s;
                    while let Some((pe, p)) = parent[cur.index()] {
                        cycle.push((pe, cur));
                        cur = p;
                        if cur == entry {
                            break;
                        }
                    }
                    cycle.reverse();
                    return Some(SilentLasso { start, stem, cycle });
                }
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    parent[t.index()] = Some((e, s));
                    queue.push_back(t);
                }
            }
        }
        unreachable!("cyclic state without a silent cycle")
    }

    /// Forward closure of the initial states over all transitions.
    pub fn reachable_states(&self) -> StateSet {
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<StateId> = self.initial().iter().collect();
        for s in &stack {
            seen[s.index()] = true;
        }
        while let Some(s) = stack.pop() {
            for &(_, t) in self.successors(s) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    stack.push(t);
                }
            }
        }
        collect_marked(&seen)
    }

    pub fn check_assumption1(&self) -> Assumption1Report {
        let reachable = self.reachable_states();
        let deadlock = reachable.iter().find(|&s| self.successors(s).is_empty());

        let cyclic = self.silent_cyclic_states();
        let divergence = reachable
            .iter()
            .find(|s| cyclic[s.index()])
            .and_then(|s| self.silent_lasso(s))
            .map(|lasso| {
                let entry = lasso.entry();
                std::iter::once(entry)
                    .chain(lasso.cycle.iter().map(|&(_, s)| s))
                    .collect::<Vec<_>>()
            });

        Assumption1Report {
            deadlock_free: CheckResult {
                holds: deadlock.is_none(),
                witness: deadlock,
            },
            divergence_free: CheckResult {
                holds: divergence.is_none(),
                witness: divergence,
            },
        }
    }

    /// Whether some infinite run starts in an initial state.
    pub fn has_infinite_run(&self) -> bool {
        let reachable = self.reachable_states();
        let mut g = DiGraph::new(self.state_count());
        for t in self.transitions() {
            g.add_edge(t.source.index(), t.target.index(), ());
        }
        graph::cycle_within(&g, |v| reachable.contains(StateId::new(v))).is_some()
    }
}

fn collect_marked(marks: &[bool]) -> StateSet {
    StateSet::from_sorted_unchecked(
        marks
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m)
            .map(|(i, _)| StateId::new(i))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::oracle::{random_fsa, GenConfig};
    use proptest::prelude::*;

    #[test]
    fn unobservable_reach_examples() {
        let fsa = s2();
        let x2 = set(&fsa, &["x2"]);
        assert_eq!(fsa.unobservable_reach(&x2), x2);
        assert_eq!(fsa.unobservable_reach(&StateSet::new()), StateSet::new());
    }

    #[test]
    fn observable_reach_examples() {
        let fsa = s1();
        let a = fsa.symbol_id("a").unwrap();
        assert_eq!(
            fsa.observable_reach(&set(&fsa, &["x0"]), a).unwrap(),
            set(&fsa, &["x1", "x2"])
        );
        assert_eq!(
            fsa.observable_reach(&StateSet::new(), a).unwrap(),
            StateSet::new()
        );

        let fsa = s3();
        let b = fsa.symbol_id("b").unwrap();
        assert_eq!(
            fsa.observable_reach(&set(&fsa, &["x1"]), b).unwrap(),
            set(&fsa, &["x1", "x2"])
        );
        assert!(matches!(
            fsa.observable_reach(&set(&fsa, &["x1"]), SymbolId::new(7)),
            Err(ModelError::SymbolOutOfRange(7))
        ));
    }

    #[test]
    fn estimate_examples() {
        let fsa = s2();
        let a = fsa.symbol_id("a").unwrap();
        assert_eq!(
            fsa.current_state_estimate(&[a]).unwrap(),
            set(&fsa, &["x1", "x2"])
        );
        assert_eq!(
            fsa.current_state_estimate(&[]).unwrap(),
            fsa.unobservable_reach(fsa.initial())
        );
        // a deadlocked observation
        assert!(fsa.current_state_estimate(&[a, a]).unwrap().is_empty());

        let fsa = s3();
        let (a, b) = (fsa.symbol_id("a").unwrap(), fsa.symbol_id("b").unwrap());
        assert_eq!(
            fsa.current_state_estimate(&[a, b]).unwrap(),
            set(&fsa, &["x1", "x2"])
        );
    }

    #[test]
    fn divergent_examples() {
        let fsa = s2();
        assert_eq!(fsa.divergent_states(), set(&fsa, &["x2"]));
        assert!(s1().divergent_states().is_empty());
    }

    #[test]
    fn divergence_closes_backwards() {
        // a -e-> b -e-> c -e-> b : all three diverge, d does not
        let fsa = Fsa::builder()
            .states(["a", "b", "c", "d"])
            .event("e", None)
            .transition("a", "e", "b")
            .transition("b", "e", "c")
            .transition("c", "e", "b")
            .transition("d", "e", "a")
            .build()
            .unwrap();
        assert_eq!(fsa.divergent_states().len(), 4);
        let lasso = fsa.silent_lasso(fsa.state_id("d").unwrap()).unwrap();
        assert!(lasso.replays_in(&fsa));
        assert_eq!(lasso.stem.len(), 2);
        assert_eq!(lasso.cycle.len(), 2);
    }

    #[test]
    fn reachable_examples() {
        assert_eq!(s1().reachable_states().len(), 3);
        let empty = Fsa::builder().states(["a"]).build().unwrap();
        assert!(empty.reachable_states().is_empty());

        let fsa = Fsa::builder()
            .states(["x0", "x1", "x2", "x9"])
            .initial("x0")
            .event("t1", Some("a"))
            .event("t2", Some("a"))
            .event("t3", Some("b"))
            .event("t4", Some("b"))
            .transition("x0", "t1", "x1")
            .transition("x0", "t2", "x2")
            .transition("x1", "t3", "x1")
            .transition("x1", "t4", "x2")
            .build()
            .unwrap();
        assert_eq!(fsa.reachable_states(), set(&fsa, &["x0", "x1", "x2"]));
    }

    #[test]
    fn assumption1_examples() {
        let r = s1().check_assumption1();
        assert!(r.deadlock_free.holds && r.divergence_free.holds);

        let fsa = s2();
        let r = fsa.check_assumption1();
        assert!(!r.deadlock_free.holds);
        assert_eq!(r.deadlock_free.witness, fsa.state_id("x1"));
        assert!(!r.divergence_free.holds);
        let x2 = fsa.state_id("x2").unwrap();
        assert_eq!(r.divergence_free.witness, Some(vec![x2, x2]));

        let single = Fsa::builder()
            .states(["s"])
            .initial("s")
            .event("e", Some("a"))
            .transition("s", "e", "s")
            .build()
            .unwrap();
        assert!(single.check_assumption1().satisfied());
    }

    /// Divergence by bounded silent path enumeration: some silent path of
    /// length up to |X|+1 from `x` repeats a state.
    fn diverges_by_enumeration(fsa: &Fsa, x: StateId) -> bool {
        fn go(fsa: &Fsa, path: &mut Vec<StateId>, budget: usize) -> bool {
            let cur = *path.last().unwrap();
            for &(_, t) in fsa.silent_successors(cur) {
                if path.contains(&t) {
                    return true;
                }
                if budget > 0 {
                    path.push(t);
                    if go(fsa, path, budget - 1) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        go(fsa, &mut vec![x], fsa.state_count() + 1)
    }

    fn arb_fsa() -> impl Strategy<Value = Fsa> {
        (
            1usize..=6,
            0usize..=5,
            0.0f64..=1.0,
            0.0f64..=3.0,
            0usize..=2,
            any::<u64>(),
        )
            .prop_map(|(states, events, silent, density, initial, seed)| {
                random_fsa(&GenConfig {
                    states,
                    events,
                    symbols: 2,
                    silent_fraction: silent,
                    density,
                    initial,
                    seed,
                })
            })
    }

    proptest! {
        #[test]
        fn ur_is_closure_operator(fsa in arb_fsa(), a_mask in any::<u8>(), b_mask in any::<u8>()) {
            let pick = |m: u8| fsa.states().filter(|s| m >> s.index() & 1 == 1).collect::<StateSet>();
            let a = pick(a_mask);
            let b = a.union(&pick(b_mask));
            let ura = fsa.unobservable_reach(&a);
            prop_assert!(a.is_subset(&ura));
            prop_assert!(ura.is_subset(&fsa.unobservable_reach(&b)));
            prop_assert_eq!(fsa.unobservable_reach(&ura), ura.clone());

            // naive one-step iteration to fixpoint
            let mut cur = a.clone();
            loop {
                let next: StateSet = cur.iter()
                    .chain(cur.iter().flat_map(|s| fsa.silent_successors(s).iter().map(|&(_, t)| t)))
                    .collect();
                if next == cur { break; }
                cur = next;
            }
            prop_assert_eq!(ura, cur);
        }

        #[test]
        fn estimate_extends_one_symbol_at_a_time(fsa in arb_fsa(), word in prop::collection::vec(0usize..2, 0..5), last in 0usize..2) {
            prop_assume!(fsa.symbol_count() > 0);
            let word: Vec<SymbolId> = word.into_iter().map(|i| SymbolId::new(i % fsa.symbol_count())).collect();
            let tau = SymbolId::new(last % fsa.symbol_count());
            let prefix = fsa.current_state_estimate(&word).unwrap();
            let mut full = word.clone();
            full.push(tau);
            prop_assert_eq!(
                fsa.current_state_estimate(&full).unwrap(),
                fsa.unobservable_reach(&fsa.observable_reach(&prefix, tau).unwrap())
            );
        }

        #[test]
        fn divergence_matches_bounded_enumeration(fsa in arb_fsa()) {
            let div = fsa.divergent_states();
            for x in fsa.states() {
                prop_assert_eq!(div.contains(x), diverges_by_enumeration(&fsa, x));
                match fsa.silent_lasso(x) {
                    Some(l) => { prop_assert!(div.contains(x)); prop_assert!(l.replays_in(&fsa)); }
                    None => prop_assert!(!div.contains(x)),
                }
            }
        }

        #[test]
        fn divergence_free_iff_no_reachable_divergent_state(fsa in arb_fsa()) {
            let r = fsa.check_assumption1();
            prop_assert_eq!(
                r.divergence_free.holds,
                !fsa.divergent_states().intersects(&fsa.reachable_states())
            );
            if let Some(w) = r.divergence_free.witness {
                prop_assert_eq!(w.first(), w.last());
                for p in w.windows(2) {
                    prop_assert!(fsa.silent_successors(p[0]).iter().any(|&(_, t)| t == p[1]));
                }
            }
            if let Some(d) = r.deadlock_free.witness {
                prop_assert!(fsa.successors(d).is_empty());
                prop_assert!(fsa.reachable_states().contains(d));
            }
        }
    }
}
