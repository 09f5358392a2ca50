//! Partially observed finite-state automata.
//!
//! An [`Fsa`] is a nondeterministic automaton whose events each carry either
//! an output symbol or no output at all (silent). States, events and output
//! symbols are interned to dense indices so derived automata can key on them
//! cheaply. Everything is immutable after [`FsaBuilder::build`].

mod reach;
mod state_set;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use reach::{Assumption1Report, CheckResult, SilentLasso};
pub use state_set::{SpecPairs, StatePair, StateSet};

macro_rules! dense_id {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(transparent)]
        pub struct $name(u32);

        impl $name {
            pub fn new(index: usize) -> Self {
                Self(u32::try_from(index).expect("index exceeds u32"))
            }

            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

dense_id!(
    /// Index into an automaton's state table.
    StateId
);
dense_id!(
    /// Index into an automaton's event table.
    EventId
);
dense_id!(
    /// Index into an automaton's output alphabet.
    SymbolId
);

/// The output emitted by an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Symbol(SymbolId),
    Silent,
}

impl Label {
    pub fn is_silent(self) -> bool {
        matches!(self, Label::Silent)
    }

    pub fn symbol(self) -> Option<SymbolId> {
        match self {
            Label::Symbol(s) => Some(s),
            Label::Silent => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transition {
    pub source: StateId,
    pub event: EventId,
    pub target: StateId,
}

/// Where a builder item sits in the order it was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Initial(usize),
    Transition(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid identifier `{name}`")]
    InvalidName { name: String },
    #[error("duplicate state `{name}`")]
    DuplicateState { name: String, decl: usize },
    #[error("duplicate event `{name}`")]
    DuplicateEvent { name: String, decl: usize },
    #[error("undeclared state `{name}`")]
    UnknownState { name: String, site: Site },
    #[error("undeclared event `{name}`")]
    UnknownEvent { name: String, transition: usize },
    #[error("state `{name}` listed twice as initial")]
    DuplicateInitial { name: String, initial: usize },
    #[error("duplicate transition `{source_state} {event} {target}`")]
    DuplicateTransition {
        source_state: String,
        event: String,
        target: String,
        transition: usize,
    },
    #[error("unknown output symbol `{name}`")]
    UnknownSymbol { name: String },
    #[error("symbol index {0} out of range")]
    SymbolOutOfRange(usize),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A partially observed finite-state automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa {
    state_names: Vec<String>,
    event_names: Vec<String>,
    event_labels: Vec<Label>,
    symbol_names: Vec<String>,
    initial: StateSet,
    transitions: Vec<Transition>,

    out: Vec<Vec<(EventId, StateId)>>,
    silent_out: Vec<Vec<(EventId, StateId)>>,
    silent_in: Vec<Vec<StateId>>,
    symbol_index: HashMap<String, SymbolId>,
    state_index: HashMap<String, StateId>,
    event_index: HashMap<String, EventId>,
}

impl Fsa {
    pub fn builder() -> FsaBuilder {
        FsaBuilder::default()
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn event_count(&self) -> usize {
        self.event_names.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbol_names.len()
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = StateId> {
        (0..self.state_count()).map(StateId::new)
    }

    pub fn events(&self) -> impl ExactSizeIterator<Item = EventId> {
        (0..self.event_count()).map(EventId::new)
    }

    pub fn symbols(&self) -> impl ExactSizeIterator<Item = SymbolId> {
        (0..self.symbol_count()).map(SymbolId::new)
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn label(&self, event: EventId) -> Label {
        self.event_labels[event.index()]
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.state_names[state.index()]
    }

    pub fn event_name(&self, event: EventId) -> &str {
        &self.event_names[event.index()]
    }

    pub fn symbol_name(&self, symbol: SymbolId) -> &str {
        &self.symbol_names[symbol.index()]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn event_id(&self, name: &str) -> Option<EventId> {
        self.event_index.get(name).copied()
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbol_index.get(name).copied()
    }

    /// Outgoing `(event, target)` pairs of `state`, in declaration order.
    pub fn successors(&self, state: StateId) -> &[(EventId, StateId)] {
        &self.out[state.index()]
    }

    pub fn silent_successors(&self, state: StateId) -> &[(EventId, StateId)] {
        &self.silent_out[state.index()]
    }

    pub(crate) fn silent_predecessors(&self, state: StateId) -> &[StateId] {
        &self.silent_in[state.index()]
    }

    /// Outgoing transitions of `state` whose event emits `symbol`.
    pub fn successors_on(
        &self,
        state: StateId,
        symbol: SymbolId,
    ) -> impl Iterator<Item = (EventId, StateId)> + '_ {
        self.out[state.index()]
            .iter()
            .copied()
            .filter(move |&(e, _)| self.label(e) == Label::Symbol(symbol))
    }

    pub fn is_observable(&self, event: EventId) -> bool {
        !self.label(event).is_silent()
    }

    /// Renders a state set with state names, e.g. `{x1,x2}`.
    pub fn show_set(&self, set: &StateSet) -> String {
        let names: Vec<&str> = set.iter().map(|s| self.state_name(s)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Renders a state pair with state names, e.g. `(x1,x2)`.
    pub fn show_pair(&self, pair: StatePair) -> String {
        format!(
            "({},{})",
            self.state_name(pair.left),
            self.state_name(pair.right)
        )
    }

    pub fn set_of(&self, names: &[&str]) -> Result<StateSet, ModelError> {
        names
            .iter()
            .map(|n| {
                self.state_id(n).ok_or_else(|| ModelError::UnknownState {
                    name: (*n).to_string(),
                    site: Site::Initial(0),
                })
            })
            .collect()
    }

    pub fn spec_of(&self, pairs: &[(&str, &str)]) -> Result<SpecPairs, ModelError> {
        let mut spec = SpecPairs::new();
        for (a, b) in pairs {
            let lookup = |n: &str| {
                self.state_id(n).ok_or_else(|| ModelError::UnknownState {
                    name: n.to_string(),
                    site: Site::Initial(0),
                })
            };
            spec.insert(lookup(a)?, lookup(b)?);
        }
        Ok(spec)
    }
}

/// Collects names and resolves them in [`FsaBuilder::build`].
///
/// Declarations and references may be added in any order; validation
/// happens once everything has been collected.
#[derive(Debug, Clone, Default)]
pub struct FsaBuilder {
    states: Vec<String>,
    events: Vec<(String, Option<String>)>,
    initial: Vec<String>,
    transitions: Vec<(String, String, String)>,
}

impl FsaBuilder {
    pub fn state(&mut self, name: impl Into<String>) -> &mut Self {
        self.states.push(name.into());
        self
    }

    pub fn states<I, S>(&mut self, names: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.states.extend(names.into_iter().map(Into::into));
        self
    }

    /// Declares an event; `None` makes it silent.
    pub fn event(&mut self, name: impl Into<String>, symbol: Option<&str>) -> &mut Self {
        self.events.push((name.into(), symbol.map(str::to_string)));
        self
    }

    pub fn initial(&mut self, name: impl Into<String>) -> &mut Self {
        self.initial.push(name.into());
        self
    }

    pub fn transition(
        &mut self,
        source: impl Into<String>,
        event: impl Into<String>,
        target: impl Into<String>,
    ) -> &mut Self {
        self.transitions
            .push((source.into(), event.into(), target.into()));
        self
    }

    pub fn build(&self) -> Result<Fsa, ModelError> {
        let check = |n: &str| {
            if is_identifier(n) {
                Ok(())
            } else {
                Err(ModelError::InvalidName {
                    name: n.to_string(),
                })
            }
        };

        let mut state_index = HashMap::new();
        for (i, name) in self.states.iter().enumerate() {
            check(name)?;
            if state_index.insert(name.clone(), StateId::new(i)).is_some() {
                return Err(ModelError::DuplicateState {
                    name: name.clone(),
                    decl: i,
                });
            }
        }

        let mut event_index = HashMap::new();
        let mut symbol_index: HashMap<String, SymbolId> = HashMap::new();
        let mut symbol_names = Vec::new();
        let mut event_labels = Vec::with_capacity(self.events.len());
        for (i, (name, symbol)) in self.events.iter().enumerate() {
            check(name)?;
            if event_index.insert(name.clone(), EventId::new(i)).is_some() {
                return Err(ModelError::DuplicateEvent {
                    name: name.clone(),
                    decl: i,
                });
            }
            let label = match symbol {
                None => Label::Silent,
                Some(sym) => {
                    check(sym)?;
                    let next = SymbolId::new(symbol_names.len());
                    let id = *symbol_index.entry(sym.clone()).or_insert_with(|| {
                        symbol_names.push(sym.clone());
                        next
                    });
                    Label::Symbol(id)
                }
            };
            event_labels.push(label);
        }

        let lookup_state = |name: &str, site: Site| {
            state_index
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownState {
                    name: name.to_string(),
                    site,
                })
        };

        let mut initial = Vec::with_capacity(self.initial.len());
        for (i, name) in self.initial.iter().enumerate() {
            let id = lookup_state(name, Site::Initial(i))?;
            if initial.contains(&id) {
                return Err(ModelError::DuplicateInitial {
                    name: name.clone(),
                    initial: i,
                });
            }
            initial.push(id);
        }

        let mut seen = HashSet::new();
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (i, (src, ev, dst)) in self.transitions.iter().enumerate() {
            let source = lookup_state(src, Site::Transition(i))?;
            let event =
                event_index
                    .get(ev.as_str())
                    .copied()
                    .ok_or_else(|| ModelError::UnknownEvent {
                        name: ev.clone(),
                        transition: i,
                    })?;
            let target = lookup_state(dst, Site::Transition(i))?;
            let t = Transition {
                source,
                event,
                target,
            };
            if !seen.insert(t) {
                return Err(ModelError::DuplicateTransition {
                    source_state: src.clone(),
                    event: ev.clone(),
                    target: dst.clone(),
                    transition: i,
                });
            }
            transitions.push(t);
        }

        let n = self.states.len();
        let mut out = vec![Vec::new(); n];
        let mut silent_out = vec![Vec::new(); n];
        let mut silent_in = vec![Vec::new(); n];
        for t in &transitions {
            out[t.source.index()].push((t.event, t.target));
            if event_labels[t.event.index()].is_silent() {
                silent_out[t.source.index()].push((t.event, t.target));
                silent_in[t.target.index()].push(t.source);
            }
        }

        Ok(Fsa {
            state_names: self.states.clone(),
            event_names: self.events.iter().map(|(n, _)| n.clone()).collect(),
            event_labels,
            symbol_names,
            initial: initial.into_iter().collect(),
            transitions,
            out,
            silent_out,
            silent_in,
            symbol_index,
            state_index,
            event_index,
        })
    }
}
