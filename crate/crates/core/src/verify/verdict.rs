use std::time::Duration;

use serde::Serialize;

use crate::automaton::{Assumption1Report, SilentLasso, StatePair, StateSet, SymbolId};
use crate::constructions::PairEvent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Spd,
    Spdd,
    SdLegacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Observer,
    Detector,
    CcEpsilon,
    LegacyDetector,
    LegacyObserver,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Observer => "observer",
            Method::Detector => "detector",
            Method::CcEpsilon => "cc-epsilon",
            Method::LegacyDetector => "legacy-detector",
            Method::LegacyObserver => "legacy-observer",
        }
    }
}

/// A path of the self-composition with exactly one observable step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSegment {
    pub symbol: SymbolId,
    /// Each event with the pair it leads to.
    pub steps: Vec<(PairEvent, StatePair)>,
}

/// Evidence for a fired condition, replayable against the automaton or the
/// construction it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A reachable node, a word reaching it, and a silent lasso from one of
    /// its divergent members.
    DivergentSet {
        node: StateSet,
        word: Vec<SymbolId>,
        lasso: SilentLasso,
    },
    /// A reachable off-diagonal pair whose left state diverges.
    DivergentPair { pair: StatePair, lasso: SilentLasso },
    /// Closed walk `nodes[0] -symbols[0]-> nodes[1] ... -> nodes[0]`.
    SetCycle {
        nodes: Vec<StateSet>,
        symbols: Vec<SymbolId>,
    },
    /// Closed walk over off-diagonal pairs, one segment per step.
    PairCycle {
        pairs: Vec<StatePair>,
        segments: Vec<PairSegment>,
    },
    /// A cycle and a non-singleton node reached from its first node by `word`.
    AfterCycle {
        cycle: Vec<StateSet>,
        symbols: Vec<SymbolId>,
        word: Vec<SymbolId>,
        node: StateSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub id: u8,
    pub name: &'static str,
    pub fired: bool,
    pub witness: Option<Witness>,
}

impl Condition {
    pub(crate) fn new(id: u8, name: &'static str, witness: Option<Witness>) -> Self {
        Self {
            id,
            name,
            fired: witness.is_some(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes: usize,
    pub edges: usize,
    #[serde(skip)]
    pub elapsed: Duration,
    /// No infinite run exists, so the property holds trivially.
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub property: Property,
    pub method: Method,
    /// `None` only when the observer budget ran out.
    pub holds: Option<bool>,
    pub conditions: Vec<Condition>,
    pub stats: Stats,
    /// Present on legacy verdicts, whose answer is only trustworthy when
    /// this report is satisfied.
    pub assumption1: Option<Assumption1Report>,
}

impl Verdict {
    /// # Panics
    /// If the verdict has no condition `id`.
    pub fn condition(&self, id: u8) -> &Condition {
        self.conditions
            .iter()
            .find(|c| c.id == id)
            .unwrap_or_else(|| panic!("{:?} verdict has no condition {id}", self.method))
    }

    pub fn fired(&self, id: u8) -> bool {
        self.conditions.iter().any(|c| c.id == id && c.fired)
    }

    pub fn is_unknown(&self) -> bool {
        self.holds.is_none()
    }
}
