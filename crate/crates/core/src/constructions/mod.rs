//! Automata derived from an [`Fsa`](crate::automaton::Fsa): the observer,
//! the detector, and the (ε-extended) self-composition.

mod composition;
mod detector;
mod observer;

use thiserror::Error;

pub use composition::{
    build_epsilon_composition, build_self_composition, epsilon_links, epsilon_links_with,
    extend_epsilon, extend_epsilon_with, one_observable_step_graph, pair_successors,
    CompositionAutomaton, CompositionEdge, LinkRule, PairEvent, Segment, StepGraph,
};
pub use detector::{build_detector, detector_successors, Detector};
pub use observer::{build_observer, Observer};

/// Default node budget for observer construction.
pub const DEFAULT_MAX_OBSERVER_NODES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("observer exceeded {limit} nodes ({built} built)")]
    BudgetExceeded { limit: usize, built: usize },
    #[error("initial estimate is empty")]
    EmptyInitial,
}
