//! JSON reports with state, event and symbol names in place of indices.

use serde_json::{json, Value};

use crate::automaton::{
    Assumption1Report, Fsa, SilentLasso, SpecPairs, StatePair, StateSet, SymbolId,
};
use crate::constructions::PairEvent;
use crate::verify::{Verdict, Witness};

struct Names<'a>(&'a Fsa);

impl Names<'_> {
    fn set(&self, q: &StateSet) -> Value {
        q.iter().map(|s| self.0.state_name(s)).collect()
    }

    fn pair(&self, p: StatePair) -> Value {
        json!([self.0.state_name(p.left), self.0.state_name(p.right)])
    }

    fn word(&self, w: &[SymbolId]) -> Value {
        w.iter().map(|&s| self.0.symbol_name(s)).collect()
    }

    fn lasso(&self, l: &SilentLasso) -> Value {
        let steps = |v: &[(crate::automaton::EventId, crate::automaton::StateId)]| -> Value {
            v.iter()
                .map(|&(e, s)| json!([self.0.event_name(e), self.0.state_name(s)]))
                .collect()
        };
        json!({
            "start": self.0.state_name(l.start),
            "stem": steps(&l.stem),
            "cycle": steps(&l.cycle),
        })
    }

    fn event(&self, e: PairEvent) -> Value {
        let f = self.0;
        match e {
            PairEvent::Observable {
                left,
                right,
                symbol,
            } => json!({
                "kind": "observable",
                "left": f.event_name(left),
                "right": f.event_name(right),
                "symbol": f.symbol_name(symbol),
            }),
            PairEvent::SilentLeft(t) => json!({"kind": "silent-left", "event": f.event_name(t)}),
            PairEvent::SilentRight(t) => json!({"kind": "silent-right", "event": f.event_name(t)}),
            PairEvent::EpsLink => json!({"kind": "eps-link"}),
        }
    }

    fn witness(&self, w: &Witness) -> Value {
        match w {
            Witness::DivergentSet { node, word, lasso } => json!({
                "kind": "divergent-set",
                "node": self.set(node),
                "word": self.word(word),
                "lasso": self.lasso(lasso),
            }),
            Witness::DivergentPair { pair, lasso } => json!({
                "kind": "divergent-pair",
                "pair": self.pair(*pair),
                "lasso": self.lasso(lasso),
            }),
            Witness::SetCycle { nodes, symbols } => json!({
                "kind": "set-cycle",
                "nodes": nodes.iter().map(|q| self.set(q)).collect::<Vec<_>>(),
                "symbols": self.word(symbols),
            }),
            Witness::PairCycle { pairs, segments } => json!({
                "kind": "pair-cycle",
                "pairs": pairs.iter().map(|&p| self.pair(p)).collect::<Vec<_>>(),
                "segments": segments.iter().map(|seg| json!({
                    "symbol": self.0.symbol_name(seg.symbol),
                    "steps": seg.steps.iter()
                        .map(|&(e, p)| json!({"event": self.event(e), "to": self.pair(p)}))
                        .collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
            Witness::AfterCycle {
                cycle,
                symbols,
                word,
                node,
            } => json!({
                "kind": "after-cycle",
                "cycle": cycle.iter().map(|q| self.set(q)).collect::<Vec<_>>(),
                "symbols": self.word(symbols),
                "word": self.word(word),
                "node": self.set(node),
            }),
        }
    }
}

pub fn verdict_json(fsa: &Fsa, v: &Verdict) -> Value {
    let n = Names(fsa);
    json!({
        "property": v.property,
        "method": v.method,
        "holds": v.holds,
        "conditions": v.conditions.iter().map(|c| json!({
            "id": c.id,
            "name": c.name,
            "fired": c.fired,
            "witness": c.witness.as_ref().map(|w| n.witness(w)),
        })).collect::<Vec<_>>(),
        "stats": {
            "nodes": v.stats.nodes,
            "edges": v.stats.edges,
            "vacuous": v.stats.vacuous,
            "elapsed_us": v.stats.elapsed.as_micros() as u64,
        },
    })
}

pub fn assumption1_json(fsa: &Fsa, r: &Assumption1Report) -> Value {
    json!({
        "deadlock_free": {
            "holds": r.deadlock_free.holds,
            "witness": r.deadlock_free.witness.map(|s| fsa.state_name(s)),
        },
        "divergence_free": {
            "holds": r.divergence_free.holds,
            "witness": r.divergence_free.witness.as_ref()
                .map(|w| w.iter().map(|&s| fsa.state_name(s)).collect::<Vec<_>>()),
        },
    })
}

pub fn spec_json(fsa: &Fsa, spec: &SpecPairs) -> Value {
    spec.iter()
        .map(|(a, b)| json!([fsa.state_name(a), fsa.state_name(b)]))
        .collect()
}
