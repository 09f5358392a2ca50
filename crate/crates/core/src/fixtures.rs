//! Three small automata that exercise the interesting corners of the
//! verification procedures. All share the shape `x0 -a-> x1`, `x0 -a-> x2`.

use crate::automaton::Fsa;
#[cfg(test)]
use crate::automaton::StateSet;

/// Two `a`-branches from `x0`, each with an observable `a` self-loop.
pub fn s1() -> Fsa {
    Fsa::builder()
        .states(["x0", "x1", "x2"])
        .initial("x0")
        .event("t1", Some("a"))
        .event("t2", Some("a"))
        .event("t3", Some("a"))
        .event("t4", Some("a"))
        .transition("x0", "t1", "x1")
        .transition("x0", "t2", "x2")
        .transition("x1", "t3", "x1")
        .transition("x2", "t4", "x2")
        .build()
        .unwrap()
}

/// Like `s1`, but `x1` is a deadlock and `x2` loops silently.
pub fn s2() -> Fsa {
    Fsa::builder()
        .states(["x0", "x1", "x2"])
        .initial("x0")
        .event("t1", Some("a"))
        .event("t2", Some("a"))
        .event("t4", None)
        .transition("x0", "t1", "x1")
        .transition("x0", "t2", "x2")
        .transition("x2", "t4", "x2")
        .build()
        .unwrap()
}

pub fn s3() -> Fsa {
    Fsa::builder()
        .states(["x0", "x1", "x2"])
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
        .unwrap()
}

#[cfg(test)]
pub(crate) fn set(fsa: &Fsa, names: &[&str]) -> StateSet {
    fsa.set_of(names).unwrap()
}
