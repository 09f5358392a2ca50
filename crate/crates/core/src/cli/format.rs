//! The line-oriented `.fsa` text format.
//!
//! ```text
//! # comment
//! states x0 x1 x2
//! initial x0
//! event t1 a
//! event t4 -        # `-` marks a silent event
//! trans x0 t1 x1
//! spec x1 x2        # ordered pair that must be told apart
//! ```
//!
//! Directives may appear in any order and repeat; names are resolved once
//! the whole file has been read.

use std::fmt::{self, Write as _};
use std::path::PathBuf;

use thiserror::Error;

use crate::automaton::{is_identifier, Fsa, FsaBuilder, ModelError, Site, SpecPairs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", if *.line == 0 { String::new() } else { format!("line {}: ", .line) })]
pub struct ParseError {
    /// 1-based; 0 when the problem concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Source line of every declaration, indexed like the builder's lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineMap {
    pub states: Vec<usize>,
    pub events: Vec<usize>,
    pub initial: Vec<usize>,
    pub transitions: Vec<usize>,
    pub spec: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FsaDocument {
    pub fsa: Fsa,
    /// `None` when the file has no `spec` line.
    pub spec: Option<SpecPairs>,
    pub path: Option<PathBuf>,
    pub lines: LineMap,
}

/// Documents are equal when they describe the same automaton and spec.
impl PartialEq for FsaDocument {
    fn eq(&self, other: &Self) -> bool {
        self.fsa == other.fsa && self.spec == other.spec
    }
}

pub fn parse_fsa(text: &str) -> Result<FsaDocument, ParseError> {
    let mut builder = FsaBuilder::default();
    let mut lines = LineMap::default();
    let mut spec_names: Vec<(String, String)> = Vec::new();
    let mut saw_states = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();
        if let Some(bad) = args
            .iter()
            .find(|a| !is_identifier(a) && !(directive == "event" && **a == "-"))
        {
            return Err(ParseError::new(line, format!("invalid identifier `{bad}`")));
        }
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(ParseError::new(
                    line,
                    format!("`{directive}` takes {n} arguments, found {}", args.len()),
                ))
            }
        };
        match directive {
            "states" => {
                if args.is_empty() {
                    return Err(ParseError::new(line, "`states` needs at least one name"));
                }
                saw_states = true;
                for a in &args {
                    builder.state(*a);
                    lines.states.push(line);
                }
            }
            "initial" => {
                for a in &args {
                    builder.initial(*a);
                    lines.initial.push(line);
                }
            }
            "event" => {
                arity(2)?;
                if args[0] == "-" {
                    return Err(ParseError::new(line, "invalid identifier `-`"));
                }
                let symbol = (args[1] != "-").then_some(args[1]);
                builder.event(args[0], symbol);
                lines.events.push(line);
            }
            "trans" => {
                arity(3)?;
                builder.transition(args[0], args[1], args[2]);
                lines.transitions.push(line);
            }
            "spec" => {
                arity(2)?;
                spec_names.push((args[0].to_string(), args[1].to_string()));
                lines.spec.push(line);
            }
            other => {
                return Err(ParseError::new(
                    line,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    if !saw_states {
        return Err(ParseError::new(0, "missing `states`"));
    }
    let fsa = builder.build().map_err(|e| {
        let line = match &e {
            ModelError::DuplicateState { decl, .. } => lines.states[*decl],
            ModelError::DuplicateEvent { decl, .. } => lines.events[*decl],
            ModelError::UnknownState {
                site: Site::Initial(i),
                ..
            } => lines.initial[*i],
            ModelError::UnknownState {
                site: Site::Transition(i),
                ..
            } => lines.transitions[*i],
            ModelError::UnknownEvent { transition, .. } => lines.transitions[*transition],
            ModelError::DuplicateInitial { initial, .. } => lines.initial[*initial],
            ModelError::DuplicateTransition { transition, .. } => lines.transitions[*transition],
            _ => 0,
        };
        ParseError::new(line, e.to_string())
    })?;

    let spec = if spec_names.is_empty() {
        None
    } else {
        let mut spec = SpecPairs::new();
        for ((a, b), &line) in spec_names.iter().zip(&lines.spec) {
            let id = |n: &str| {
                fsa.state_id(n)
                    .ok_or_else(|| ParseError::new(line, format!("undeclared state `{n}`")))
            };
            spec.insert(id(a)?, id(b)?);
        }
        Some(spec)
    };

    Ok(FsaDocument {
        fsa,
        spec,
        path: None,
        lines,
    })
}

/// Canonical text of `fsa` (and `spec`), accepted by [`parse_fsa`].
pub fn print_fsa(fsa: &Fsa, spec: Option<&SpecPairs>) -> String {
    let mut s = String::new();
    let names = |it: &mut dyn Iterator<Item = &str>| it.collect::<Vec<_>>().join(" ");
    let _ = writeln!(
        s,
        "states {}",
        names(&mut fsa.states().map(|x| fsa.state_name(x)))
    );
    if !fsa.initial().is_empty() {
        let _ = writeln!(
            s,
            "initial {}",
            names(&mut fsa.initial().iter().map(|x| fsa.state_name(x)))
        );
    }
    for e in fsa.events() {
        let sym = fsa.label(e).symbol().map_or("-", |y| fsa.symbol_name(y));
        let _ = writeln!(s, "event {} {sym}", fsa.event_name(e));
    }
    for t in fsa.transitions() {
        let _ = writeln!(
            s,
            "trans {} {} {}",
            fsa.state_name(t.source),
            fsa.event_name(t.event),
            fsa.state_name(t.target)
        );
    }
    for (a, b) in spec.into_iter().flat_map(|sp| sp.iter()) {
        let _ = writeln!(s, "spec {} {}", fsa.state_name(a), fsa.state_name(b));
    }
    s
}

impl fmt::Display for FsaDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_fsa(&self.fsa, self.spec.as_ref()))
    }
}

/// Parses `--spec` values such as `(x0,x2)` or `(x0,x2),(x1,x2)`.
pub fn parse_spec_arg(fsa: &Fsa, arg: &str) -> Result<SpecPairs, String> {
    let compact: String = arg.chars().filter(|c| !c.is_whitespace()).collect();
    let mut spec = SpecPairs::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        rest = rest.strip_prefix(',').unwrap_or(rest);
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| format!("malformed spec `{arg}`, expected (a,b)"))?;
        let (pair, tail) = inner;
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| format!("malformed pair `({pair})`"))?;
        let id = |n: &str| {
            fsa.state_id(n)
                .ok_or_else(|| format!("undeclared state `{n}`"))
        };
        spec.insert(id(a)?, id(b)?);
        rest = tail;
    }
    Ok(spec)
}
