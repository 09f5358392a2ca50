//! Graphviz export. Output is sorted, so equal structures give equal text.

use std::fmt::Write as _;

use crate::automaton::{Fsa, StateSet, SymbolId};
use crate::constructions::{CompositionAutomaton, Detector, Observer, PairEvent};

#[derive(Debug, Clone)]
pub struct DotOptions {
    pub name: String,
    pub left_to_right: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        Self {
            name: "G".into(),
            left_to_right: true,
        }
    }
}

/// A structure that can be drawn.
pub enum Structure<'a> {
    Observer(&'a Observer),
    Detector(&'a Detector),
    Composition(&'a CompositionAutomaton),
}

struct Edge {
    from: usize,
    to: usize,
    label: String,
    dotted: bool,
}

fn render(
    labels: Vec<String>,
    initial: &[usize],
    mut edges: Vec<Edge>,
    opts: &DotOptions,
) -> String {
    let mut s = format!("digraph {} {{\n", opts.name);
    if labels.is_empty() {
        s.push_str("}\n");
        return s;
    }
    if opts.left_to_right {
        s.push_str("  rankdir=LR;\n");
    }
    s.push_str("  node [shape=box];\n");
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{label}\"];");
    }
    for &i in initial {
        let _ = writeln!(s, "  init{i} [shape=point];");
        let _ = writeln!(s, "  init{i} -> n{i};");
    }
    edges.sort_by(|a, b| (a.from, a.to, &a.label).cmp(&(b.from, b.to, &b.label)));
    for e in &edges {
        let style = if e.dotted { ", style=dotted" } else { "" };
        let _ = writeln!(
            s,
            "  n{} -> n{} [label=\"{}\"{style}];",
            e.from, e.to, e.label
        );
    }
    s.push_str("}\n");
    s
}

fn set_edges(fsa: &Fsa, edges: impl Iterator<Item = (usize, SymbolId, usize)>) -> Vec<Edge> {
    edges
        .map(|(from, sym, to)| Edge {
            from,
            to,
            label: fsa.symbol_name(sym).to_string(),
            dotted: false,
        })
        .collect()
}

fn set_labels(fsa: &Fsa, nodes: &[StateSet]) -> Vec<String> {
    nodes.iter().map(|q| fsa.show_set(q)).collect()
}

pub fn export_dot(fsa: &Fsa, structure: Structure<'_>, opts: &DotOptions) -> String {
    match structure {
        Structure::Observer(o) => render(
            set_labels(fsa, o.nodes()),
            o.initial().as_slice(),
            set_edges(fsa, o.edges()),
            opts,
        ),
        Structure::Detector(d) => render(
            set_labels(fsa, d.nodes()),
            d.initial().as_slice(),
            set_edges(fsa, d.edges().iter().copied()),
            opts,
        ),
        Structure::Composition(cc) => {
            let labels = cc.nodes().iter().map(|&p| fsa.show_pair(p)).collect();
            let edges = cc
                .edges()
                .iter()
                .map(|e| {
                    let label = match e.event {
                        PairEvent::Observable { left, right, .. } => {
                            format!("({},{})", fsa.event_name(left), fsa.event_name(right))
                        }
                        PairEvent::SilentLeft(t) => format!("({},ε)", fsa.event_name(t)),
                        PairEvent::SilentRight(t) => format!("(ε,{})", fsa.event_name(t)),
                        PairEvent::EpsLink => "ε".to_string(),
                    };
                    Edge {
                        from: e.source,
                        to: e.target,
                        label,
                        dotted: e.event == PairEvent::EpsLink,
                    }
                })
                .collect();
            render(labels, cc.initial(), edges, opts)
        }
    }
}
