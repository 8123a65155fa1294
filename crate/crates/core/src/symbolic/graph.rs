use std::collections::{HashMap, VecDeque};

use num::integer::gcd;

use super::alphabet::Symbol;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Symbol,
}

/// A finite directed graph with symbol-labelled edges.
///
/// Edges are kept sorted by `(from, label, to)`, which fixes every
/// traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl LabeledGraph {
    pub fn new(vertices: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable_by_key(|e| (e.from, e.label, e.to));
        edges.dedup();
        let mut out = vec![Vec::new(); vertices];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        LabeledGraph {
            vertices,
            edges,
            out,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.out[v].iter().map(move |&i| &self.edges[i])
    }

    /// Whether at most one edge with a given label leaves each vertex.
    pub fn is_deterministic(&self) -> bool {
        self.out.iter().all(|idx| {
            idx.windows(2)
                .all(|w| self.edges[w[0]].label != self.edges[w[1]].label)
        })
    }

    /// Removes vertices that do not lie on a bi-infinite path. Returns the
    /// trimmed graph and, for each kept vertex, its original index.
    pub fn trimmed(&self) -> (LabeledGraph, Vec<usize>) {
        let mut alive = vec![true; self.vertices];
        loop {
            let mut indeg = vec![0usize; self.vertices];
            let mut outdeg = vec![0usize; self.vertices];
            for e in &self.edges {
                if alive[e.from] && alive[e.to] {
                    outdeg[e.from] += 1;
                    indeg[e.to] += 1;
                }
            }
            let mut changed = false;
            for v in 0..self.vertices {
                if alive[v] && (indeg[v] == 0 || outdeg[v] == 0) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<usize> = (0..self.vertices).filter(|&v| alive[v]).collect();
        let mut index = vec![usize::MAX; self.vertices];
        for (new, &old) in kept.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.from] && alive[e.to])
            .map(|e| Edge {
                from: index[e.from],
                to: index[e.to],
                label: e.label,
            })
            .collect();
        (LabeledGraph::new(kept.len(), edges), kept)
    }

    /// Subset construction started from the set of all vertices, without
    /// the empty subset. States are numbered in breadth-first discovery
    /// order with labels visited in increasing order.
    pub fn determinized(&self, alphabet_size: usize, cap: usize) -> Result<LabeledGraph> {
        let start: Vec<usize> = (0..self.vertices).collect();
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut states = vec![start.clone()];
        ids.insert(start, 0);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            for label in 0..alphabet_size as Symbol {
                let next = self.step_set(&states[id], label);
                if next.is_empty() {
                    continue;
                }
                let to = match ids.get(&next) {
                    Some(&to) => to,
                    None => {
                        if states.len() >= cap {
                            return Err(Error::cap(
                                "subset_states",
                                cap as u64,
                                states.len() as u64 + 1,
                            ));
                        }
                        let to = states.len();
                        ids.insert(next.clone(), to);
                        states.push(next);
                        queue.push_back(to);
                        to
                    }
                };
                edges.push(Edge {
                    from: id,
                    to,
                    label,
                });
            }
        }
        Ok(LabeledGraph::new(states.len(), edges))
    }

    /// Successor set of `set` under `label`, sorted and deduplicated.
    pub fn step_set(&self, set: &[usize], label: Symbol) -> Vec<usize> {
        let mut next: Vec<usize> = set
            .iter()
            .flat_map(|&v| self.out_edges(v))
            .filter(|e| e.label == label)
            .map(|e| e.to)
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    fn reachable(&self, from: usize, reverse: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertices];
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            if reverse {
                adj[e.to].push(e.from);
            } else {
                adj[e.from].push(e.to);
            }
        }
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        self.reachable(0, false).iter().all(|&b| b) && self.reachable(0, true).iter().all(|&b| b)
    }

    /// Gcd of cycle lengths of a strongly connected graph.
    pub fn period(&self) -> usize {
        if self.vertices == 0 {
            return 0;
        }
        let mut level: Vec<Option<i64>> = vec![None; self.vertices];
        level[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for e in self.out_edges(v) {
                if level[e.to].is_none() {
                    level[e.to] = Some(level[v].unwrap() + 1);
                    queue.push_back(e.to);
                }
            }
        }
        let mut g = 0i64;
        for e in &self.edges {
            if let (Some(a), Some(b)) = (level[e.from], level[e.to]) {
                g = gcd(g, a + 1 - b);
            }
        }
        g.unsigned_abs() as usize
    }

    /// Adjacency counts `A[i][j]` = number of edges `i -> j`.
    pub fn adjacency(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.vertices]; self.vertices];
        for e in &self.edges {
            a[e.from][e.to] += 1.0;
        }
        a
    }
}
