//! Verification of strong periodic detectability and strong periodic
//! D-detectability for partially observed finite-state automata, with no
//! deadlock-freeness or divergence-freeness requirement on the input.
//!
//! Three independent procedures decide strong periodic detectability:
//!
//! - [`verify::check_spd_observer`] works on the powerset observer
//!   (exponential);
//! - [`verify::check_spd_detector`] works on the detector, whose nodes are
//!   state sets of size at most two (polynomial);
//! - [`verify::check_spd_cc`] works on the ε-extended self-composition over
//!   state pairs (polynomial).
//!
//! [`verify::check_spdd_observer`] decides the D-variant against a set of
//! state pairs that must be told apart. Each verdict records which negation
//! condition fired and a witness that can be replayed against the automaton.
//!
//! ```
//! use spdet::{fixtures, verify};
//!
//! let fsa = fixtures::s3();
//! let v = verify::check_spd_detector(&fsa);
//! assert_eq!(v.holds, Some(false));
//! assert!(v.condition(2).fired);
//! ```

pub mod automaton;
pub mod cli;
pub mod constructions;
pub mod fixtures;
pub mod fuzz;
pub mod graph;
pub mod oracle;
pub mod verify;

pub use automaton::{Fsa, FsaBuilder, Label, SpecPairs, StateId, StatePair, StateSet, SymbolId};
