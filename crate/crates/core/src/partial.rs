//! Partial graphs: a three-way classification of every vertex pair.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{check_subset, connected_via, pair_count, pair_index, reach_via, Graph};
use crate::vset::VertexSet;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairState {
    Edge,
    NonEdge,
    Unknown,
}

/// Every unordered pair of `0..n` is exactly one of edge, non-edge or
/// unknown. The known edges are mirrored into adjacency bitsets so that
/// connectivity queries stay cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialGraph {
    n: usize,
    states: Vec<PairState>,
    adj: Vec<VertexSet>,
}

impl PartialGraph {
    /// All pairs unknown.
    pub fn unknown(n: usize) -> Self {
        PartialGraph {
            n,
            states: vec![PairState::Unknown; pair_count(n)],
            adj: vec![VertexSet::new(); n],
        }
    }

    /// A graph seen as a partial graph with nothing unknown.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut pg = PartialGraph {
            n,
            states: vec![PairState::NonEdge; pair_count(n)],
            adj: vec![VertexSet::new(); n],
        };
        for (u, v) in g.edges() {
            pg.states[pair_index(n, u, v)] = PairState::Edge;
            pg.adj[u as usize].insert(v);
            pg.adj[v as usize].insert(u);
        }
        debug_assert!(pg.audit());
        pg
    }

    /// Pairs inside `subset` classified as in `g`, everything else unknown.
    pub fn from_graph_on_subset(g: &Graph, subset: &VertexSet) -> Self {
        let mut pg = PartialGraph::unknown(g.n());
        let ids = subset.to_vec();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                pg.set_state(
                    a,
                    b,
                    if g.has_edge(a, b) {
                        PairState::Edge
                    } else {
                        PairState::NonEdge
                    },
                );
            }
        }
        debug_assert!(pg.audit());
        pg
    }

    pub fn builder(n: usize) -> PartialGraphBuilder {
        PartialGraphBuilder {
            pg: PartialGraph::unknown(n),
            seen: HashSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state(&self, u: u32, v: u32) -> PairState {
        let (a, b) = ordered(u, v);
        self.states[pair_index(self.n, a, b)]
    }

    /// Refines one pair. Internal callers only ever decide unknown pairs.
    pub(crate) fn set_state(&mut self, u: u32, v: u32, st: PairState) {
        let (a, b) = ordered(u, v);
        let idx = pair_index(self.n, a, b);
        let old = self.states[idx];
        debug_assert!(
            old == PairState::Unknown || old == st,
            "pair ({a},{b}) reclassified from {old:?} to {st:?}"
        );
        self.states[idx] = st;
        match st {
            PairState::Edge => {
                self.adj[a as usize].insert(b);
                self.adj[b as usize].insert(a);
            }
            PairState::NonEdge | PairState::Unknown => {
                self.adj[a as usize].remove(b);
                self.adj[b as usize].remove(a);
            }
        }
    }

    /// Known-edge neighbors of `v`.
    pub fn known_neighbors(&self, v: u32) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub fn known_degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Open neighborhood of `s` through known edges.
    pub fn known_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s.iter() {
            out.union_with(&self.adj[v as usize]);
        }
        out.subtract(s);
        out
    }

    /// The graph formed by the known edges alone.
    pub fn known_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n as u32 {
            for v in self.adj[u as usize].iter() {
                if v > u {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Connectivity of the subgraph induced on `s` by known edges only.
    pub fn is_connected_subset(&self, s: &VertexSet) -> Result<bool> {
        check_subset(self.n, s)?;
        Ok(self.connected_on_known(s))
    }

    pub(crate) fn connected_on_known(&self, s: &VertexSet) -> bool {
        connected_via(s, |v| &self.adj[v as usize])
    }

    pub fn unknown_pairs(&self) -> Vec<(u32, u32)> {
        self.pairs_in_state(PairState::Unknown)
    }

    pub fn known_edges(&self) -> Vec<(u32, u32)> {
        self.pairs_in_state(PairState::Edge)
    }

    pub fn known_non_edges(&self) -> Vec<(u32, u32)> {
        self.pairs_in_state(PairState::NonEdge)
    }

    fn pairs_in_state(&self, want: PairState) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut idx = 0;
        for u in 0..self.n as u32 {
            for v in u + 1..self.n as u32 {
                if self.states[idx] == want {
                    out.push((u, v));
                }
                idx += 1;
            }
        }
        out
    }

    pub fn unknown_count(&self) -> usize {
        self.states
            .iter()
            .filter(|s| **s == PairState::Unknown)
            .count()
    }

    /// Whether every pair known in `base` carries the same state here, i.e.
    /// self refines base.
    pub fn is_partial_supergraph_of(&self, base: &PartialGraph) -> bool {
        if self.n != base.n {
            return false;
        }
        self.states
            .iter()
            .zip(base.states.iter())
            .all(|(s, b)| *b == PairState::Unknown || s == b)
    }

    /// Whether the full graph `g` decides every known pair the same way.
    pub fn is_supergraph(&self, g: &Graph) -> bool {
        if self.n != g.n() {
            return false;
        }
        let mut idx = 0;
        for u in 0..self.n as u32 {
            for v in u + 1..self.n as u32 {
                let ok = match self.states[idx] {
                    PairState::Edge => g.has_edge(u, v),
                    PairState::NonEdge => !g.has_edge(u, v),
                    PairState::Unknown => true,
                };
                if !ok {
                    return false;
                }
                idx += 1;
            }
        }
        true
    }

    /// Consistency of the internal representation: the states table has the
    /// right shape and the adjacency mirror matches it exactly.
    pub fn audit(&self) -> bool {
        if self.states.len() != pair_count(self.n) || self.adj.len() != self.n {
            return false;
        }
        let mut idx = 0;
        for u in 0..self.n as u32 {
            if self.adj[u as usize].contains(u) {
                return false;
            }
            for v in u + 1..self.n as u32 {
                let listed = self.adj[u as usize].contains(v);
                let mirrored = self.adj[v as usize].contains(u);
                if listed != mirrored || listed != (self.states[idx] == PairState::Edge) {
                    return false;
                }
                idx += 1;
            }
        }
        true
    }

    /// Vertices of `allowed` discovered by a BFS over known edges starting at
    /// `start`, truncated to `cap` vertices. Neighbors are expanded in
    /// ascending id order, so the result is deterministic; every prefix of
    /// the discovery order induces a connected subgraph.
    pub(crate) fn bfs_prefix(&self, allowed: &VertexSet, start: u32, cap: usize) -> VertexSet {
        debug_assert!(allowed.contains(start));
        let mut picked = VertexSet::new();
        if cap == 0 {
            return picked;
        }
        picked.insert(start);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if picked.len() >= cap {
                break;
            }
            for w in self.adj[v as usize].intersection(allowed).iter() {
                if !picked.contains(w) {
                    picked.insert(w);
                    queue.push_back(w);
                    if picked.len() >= cap {
                        break;
                    }
                }
            }
        }
        picked
    }

    pub(crate) fn reach_known(&self, within: &VertexSet, start: u32) -> VertexSet {
        reach_via(within, start, |v| &self.adj[v as usize])
    }
}

impl std::fmt::Debug for PartialGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PartialGraph(n={}, e={:?}, unknown={:?})",
            self.n,
            self.known_edges(),
            self.unknown_pairs()
        )
    }
}

/// Strict builder: every pair may be classified at most once; unlisted pairs
/// stay unknown.
pub struct PartialGraphBuilder {
    pg: PartialGraph,
    seen: HashSet<usize>,
}

impl PartialGraphBuilder {
    pub fn edge(self, u: u32, v: u32) -> Result<Self> {
        self.set(u, v, PairState::Edge)
    }

    pub fn non_edge(self, u: u32, v: u32) -> Result<Self> {
        self.set(u, v, PairState::NonEdge)
    }

    fn set(mut self, u: u32, v: u32, st: PairState) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidParameter(format!("self-pair at vertex {u}")));
        }
        if u as usize >= self.pg.n || v as usize >= self.pg.n {
            return Err(Error::InvalidParameter(format!(
                "pair ({u}, {v}) has an endpoint outside 0..{}",
                self.pg.n
            )));
        }
        let (a, b) = ordered(u, v);
        let idx = pair_index(self.pg.n, a, b);
        if !self.seen.insert(idx) {
            return Err(Error::InvalidParameter(format!(
                "pair ({a}, {b}) classified twice"
            )));
        }
        self.pg.set_state(a, b, st);
        Ok(self)
    }

    pub fn build(self) -> PartialGraph {
        debug_assert!(self.pg.audit());
        self.pg
    }
}

fn ordered(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
