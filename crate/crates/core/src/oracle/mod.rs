//! Deliberately naive reference checkers, a seeded automaton generator, and
//! exhaustive checks of the structural lemmas linking observer, detector and
//! self-composition. Used to cross-validate [`crate::verify`].

mod generate;
mod lemmas;
mod naive;

use thiserror::Error;

pub use generate::{random_fsa, GenConfig};
pub use lemmas::{
    check_lifting, check_simulation, observable_sequence, LiftingCounterexample,
    SimulationCounterexample,
};
pub use naive::{naive_spd, naive_spdd, NaiveVerdict, ORACLE_MAX_STATES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("automaton has {states} states; the oracle accepts at most {limit}")]
    TooLarge { states: usize, limit: usize },
}
