//! Simple undirected labeled graphs on dense integer vertex ids.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// A simple undirected graph on vertices `0..n`. Labels are an optional
/// sidecar; all algorithms operate on the integer ids.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: BTreeMap<u32, String>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (u32, u32)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Decodes a graph from a bitmask over pair indices in lexicographic
    /// order; usable for n up to 11 (55 pairs).
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        debug_assert!(pair_count(n) <= 64);
        let mut g = Graph::new(n);
        let mut idx = 0;
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if mask >> idx & 1 != 0 {
                    g.add_edge(u, v).unwrap();
                }
                idx += 1;
            }
        }
        g
    }

    /// Inverse of [`Graph::from_edge_mask`].
    pub fn edge_mask(&self) -> u64 {
        debug_assert!(pair_count(self.n) <= 64);
        let mut mask = 0u64;
        let mut idx = 0;
        for u in 0..self.n as u32 {
            for v in u + 1..self.n as u32 {
                if self.has_edge(u, v) {
                    mask |= 1 << idx;
                }
                idx += 1;
            }
        }
        mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        if u as usize >= self.n || v as usize >= self.n {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        Ok(())
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        (u as usize) < self.n && self.adj[u as usize].contains(v)
    }

    pub fn neighbors(&self, v: u32) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    /// Edges in canonical order: each pair as (min, max), sorted
    /// lexicographically.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for v in self.adj[u as usize].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// A copy with one extra edge.
    pub fn with_edge(&self, u: u32, v: u32) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    pub fn set_label(&mut self, v: u32, label: impl Into<String>) -> Result<()> {
        if v as usize >= self.n {
            return Err(Error::InvalidParameter(format!(
                "label target {v} outside 0..{}",
                self.n
            )));
        }
        self.labels.insert(v, label.into());
        Ok(())
    }

    pub fn label(&self, v: u32) -> Option<&str> {
        self.labels.get(&v).map(|s| s.as_str())
    }

    pub fn labels(&self) -> &BTreeMap<u32, String> {
        &self.labels
    }

    /// Two graphs with the same edge set, labels aside.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.connected_on(&VertexSet::full(self.n))
    }

    /// Whether the subgraph induced on `s` is connected.
    pub fn is_connected_subset(&self, s: &VertexSet) -> Result<bool> {
        check_subset(self.n, s)?;
        Ok(self.connected_on(s))
    }

    /// Connectivity of the induced subgraph; `s` must be non-empty and in
    /// range.
    pub(crate) fn connected_on(&self, s: &VertexSet) -> bool {
        connected_via(s, |v| &self.adj[v as usize])
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut remaining = VertexSet::full(self.n);
        let mut out = Vec::new();
        while let Some(start) = remaining.min() {
            let comp = reach_via(&remaining, start, |v| &self.adj[v as usize]);
            remaining.subtract(&comp);
            out.push(comp);
        }
        out
    }

    pub fn triangle_free(&self) -> bool {
        for u in 0..self.n as u32 {
            for v in self.adj[u as usize].iter() {
                if v > u && !self.adj[u as usize].is_disjoint(&self.adj[v as usize]) {
                    return false;
                }
            }
        }
        true
    }

    /// 0-1-2-...-(n-1).
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (0..n.saturating_sub(1) as u32).map(|i| (i, i + 1))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = Graph::path(n);
        g.add_edge(0, n as u32 - 1).unwrap();
        g
    }

    /// K_{1,r} with center 0.
    pub fn star(r: usize) -> Self {
        Graph::from_edges(r + 1, (1..=r as u32).map(|v| (0, v))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn check_subset(n: usize, s: &VertexSet) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidParameter("empty vertex subset".into()));
    }
    if let Some(max) = s.iter().last() {
        if max as usize >= n {
            return Err(Error::InvalidParameter(format!(
                "vertex {max} outside 0..{n}"
            )));
        }
    }
    Ok(())
}

/// Connectivity of `s` under the adjacency closure `adj`, via bitset BFS.
pub(crate) fn connected_via<'a, F>(s: &VertexSet, adj: F) -> bool
where
    F: Fn(u32) -> &'a VertexSet,
{
    let start = match s.min() {
        Some(v) => v,
        None => return false,
    };
    reach_via(s, start, adj) == *s
}

/// Vertices of `s` reachable from `start` through `adj`, intersected with `s`.
pub(crate) fn reach_via<'a, F>(s: &VertexSet, start: u32, adj: F) -> VertexSet
where
    F: Fn(u32) -> &'a VertexSet,
{
    let mut seen = VertexSet::singleton(start);
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for w in adj(v).intersection(s).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                frontier.push(w);
            }
        }
    }
    seen
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the unordered pair (u, v), u < v, in lexicographic order.
pub(crate) fn pair_index(n: usize, u: u32, v: u32) -> usize {
    debug_assert!(u < v && (v as usize) < n);
    let u = u as usize;
    let v = v as usize;
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}
