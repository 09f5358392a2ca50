//! Directed graphs over dense node indices, with strongly connected
//! components and cycle search restricted to a node predicate.

use std::collections::VecDeque;

/// A directed graph whose edges may carry a payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph<E = ()> {
    adj: Vec<Vec<(usize, E)>>,
}

impl<E> Default for DiGraph<E> {
    fn default() -> Self {
        Self { adj: Vec::new() }
    }
}

impl<E> DiGraph<E> {
    pub fn new(nodes: usize) -> Self {
        Self {
            adj: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// # Panics
    /// If either endpoint is out of range.
    pub fn add_edge(&mut self, from: usize, to: usize, payload: E) {
        assert!(to < self.adj.len(), "edge target {to} out of range");
        self.adj[from].push((to, payload));
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[node].iter().map(|(v, _)| *v)
    }

    pub fn edges_from(&self, node: usize) -> &[(usize, E)] {
        &self.adj[node]
    }

    /// The payload of the first edge `from -> to`, if any.
    pub fn edge(&self, from: usize, to: usize) -> Option<&E> {
        self.adj[from]
            .iter()
            .find(|(v, _)| *v == to)
            .map(|(_, e)| e)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edge(from, to).is_some()
    }
}

/// Strongly connected components, listed in reverse topological order
/// (every edge between components goes from a later to an earlier entry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub components: Vec<Vec<usize>>,
    component_of: Vec<Option<usize>>,
}

impl Components {
    /// Component index of `node`, or `None` if the node was filtered out.
    pub fn component_of(&self, node: usize) -> Option<usize> {
        self.component_of[node]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn tarjan_scc<E>(g: &DiGraph<E>) -> Components {
    tarjan_filtered(g, |_| true)
}

/// Tarjan's algorithm on the subgraph induced by `keep`, iterative so deep
/// graphs don't overflow the call stack.
fn tarjan_filtered<E>(g: &DiGraph<E>, keep: impl Fn(usize) -> bool) -> Components {
    const UNVISITED: usize = usize::MAX;
    let n = g.node_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component_of = vec![None; n];
    let mut components = Vec::new();
    let mut next = 0usize;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED || !keep(root) {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&(w, _)) = g.adj[v].get(*pos) {
                *pos += 1;
                if !keep(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = components.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component_of[w] = Some(id);
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }

    Components {
        components,
        component_of,
    }
}

/// Finds a cycle that visits only nodes satisfying `keep`.
///
/// The witness is a closed walk `[v0, v1, ..., vk]` with `v0 == vk` and an
/// edge between each consecutive pair; a self-loop is `[v, v]`. The walk is
/// not necessarily simple or shortest.
pub fn cycle_within<E>(g: &DiGraph<E>, keep: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let sccs = tarjan_filtered(g, &keep);
    for comp in &sccs.components {
        let id = sccs.component_of(comp[0]);
        if comp.len() == 1 {
            let v = comp[0];
            if g.has_edge(v, v) {
                return Some(vec![v, v]);
            }
            continue;
        }
        return Some(cycle_in_component(g, comp[0], |w| {
            sccs.component_of(w) == id
        }));
    }
    None
}

/// Closed walk from `start` back to itself, staying inside `inside`.
/// `start` must lie on a nontrivial strongly connected component.
fn cycle_in_component<E>(
    g: &DiGraph<E>,
    start: usize,
    inside: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.node_count()];
    let mut queue = VecDeque::from([start]);
    parent[start] = start;
    while let Some(v) = queue.pop_front() {
        for w in g.successors(v) {
            if w == start {
                let mut path = vec![start];
                let mut cur = v;
                while cur != start {
                    path.push(cur);
                    cur = parent[cur];
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if inside(w) && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("start node is not on a cycle")
}

/// Forward closure of `sources`, sorted.
pub fn reachable_from<E>(g: &DiGraph<E>, sources: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut seen = vec![false; g.node_count()];
    let mut stack: Vec<usize> = Vec::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for w in g.successors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}
