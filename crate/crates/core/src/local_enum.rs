//! Backtracking enumeration of candidate graphs on a small vertex subset,
//! pruned by a degree cap, a required seed neighborhood, and the instance's
//! k-sets that fit inside the subset. Shared by the triangle-free case-2
//! search and skeleton construction.

use crate::graph::pair_index;
use crate::instance::{for_each_ksubset, KSetInstance};
use crate::vset::VertexSet;

pub(crate) struct LocalEnum<'a> {
    pub inst: &'a KSetInstance,
    /// The subset the candidate graphs live on.
    pub verts: VertexSet,
    /// Seed set t; the rest of `verts` is its required open neighborhood.
    pub seed: VertexSet,
    /// Cap on degrees within the subset.
    pub max_degree: usize,
}

struct LocalConstraint {
    members: Vec<u32>,
    required_connected: bool,
}

impl LocalEnum<'_> {
    /// All candidate edge lists (global ids, lexicographic) that survive the
    /// pruning rules, in deterministic DFS order.
    pub fn collect(&self) -> Vec<Vec<(u32, u32)>> {
        let ids = self.verts.to_vec();
        let n = self.inst.n();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                pairs.push((u, v));
            }
        }
        if pairs.is_empty() {
            return vec![Vec::new()];
        }

        // k-sets fully inside the subset, keyed by the depth of their last
        // internal pair
        let mut by_last: Vec<Vec<LocalConstraint>> = (0..pairs.len()).map(|_| Vec::new()).collect();
        let pair_depth: std::collections::HashMap<usize, usize> = pairs
            .iter()
            .enumerate()
            .map(|(d, &(u, v))| (pair_index(n, u, v), d))
            .collect();
        for_each_ksubset(ids.len(), self.inst.k(), |local| {
            let members: Vec<u32> = local.iter().map(|i| ids[i as usize]).collect();
            let set = VertexSet::from_ids(members.iter().copied());
            if let Some(required_connected) = self.inst.classify(&set) {
                let mut last = 0;
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        last = last.max(pair_depth[&pair_index(n, u, v)]);
                    }
                }
                by_last[last].push(LocalConstraint {
                    members,
                    required_connected,
                });
            }
        });

        // seed-neighborhood bookkeeping: every non-seed vertex needs an edge
        // into the seed
        let mut remaining_seed_pairs = vec![0usize; n];
        for &(u, v) in &pairs {
            let o = if self.seed.contains(u) && !self.seed.contains(v) {
                v
            } else if self.seed.contains(v) && !self.seed.contains(u) {
                u
            } else {
                continue;
            };
            remaining_seed_pairs[o as usize] += 1;
        }

        let mut st = LocalDfs {
            seed: &self.seed,
            pairs: &pairs,
            by_last: &by_last,
            max_degree: self.max_degree,
            adj: vec![VertexSet::new(); n],
            degrees: vec![0usize; n],
            seed_edge_count: vec![0usize; n],
            remaining_seed_pairs,
            edges: Vec::new(),
            out: Vec::new(),
        };
        st.dfs(0);
        st.out
    }
}

struct LocalDfs<'a> {
    seed: &'a VertexSet,
    pairs: &'a [(u32, u32)],
    by_last: &'a [Vec<LocalConstraint>],
    max_degree: usize,
    adj: Vec<VertexSet>,
    degrees: Vec<usize>,
    seed_edge_count: Vec<usize>,
    remaining_seed_pairs: Vec<usize>,
    edges: Vec<(u32, u32)>,
    out: Vec<Vec<(u32, u32)>>,
}

impl LocalDfs<'_> {
    fn dfs(&mut self, depth: usize) {
        if depth == self.pairs.len() {
            self.out.push(self.edges.clone());
            return;
        }
        for edge in [false, true] {
            if self.assign(depth, edge) {
                self.dfs(depth + 1);
                self.unassign(depth, edge);
            }
        }
    }

    fn assign(&mut self, depth: usize, edge: bool) -> bool {
        let (u, v) = self.pairs[depth];
        let crossing = self.seed.contains(u) != self.seed.contains(v);
        if edge {
            if self.degrees[u as usize] + 1 > self.max_degree
                || self.degrees[v as usize] + 1 > self.max_degree
            {
                return false;
            }
            self.adj[u as usize].insert(v);
            self.adj[v as usize].insert(u);
            self.degrees[u as usize] += 1;
            self.degrees[v as usize] += 1;
            self.edges.push((u, v));
        }
        if crossing {
            let o = if self.seed.contains(u) { v } else { u };
            if edge {
                self.seed_edge_count[o as usize] += 1;
            }
            self.remaining_seed_pairs[o as usize] -= 1;
            if self.remaining_seed_pairs[o as usize] == 0 && self.seed_edge_count[o as usize] == 0 {
                self.unassign(depth, edge);
                return false;
            }
        }
        for c in &self.by_last[depth] {
            if self.set_connected(&c.members) != c.required_connected {
                self.unassign(depth, edge);
                return false;
            }
        }
        true
    }

    fn unassign(&mut self, depth: usize, edge: bool) {
        let (u, v) = self.pairs[depth];
        let crossing = self.seed.contains(u) != self.seed.contains(v);
        if crossing {
            let o = if self.seed.contains(u) { v } else { u };
            self.remaining_seed_pairs[o as usize] += 1;
            if edge {
                self.seed_edge_count[o as usize] -= 1;
            }
        }
        if edge {
            self.adj[u as usize].remove(v);
            self.adj[v as usize].remove(u);
            self.degrees[u as usize] -= 1;
            self.degrees[v as usize] -= 1;
            self.edges.pop();
        }
    }

    fn set_connected(&self, members: &[u32]) -> bool {
        let within = VertexSet::from_ids(members.iter().copied());
        let mut seen = VertexSet::singleton(members[0]);
        let mut frontier = vec![members[0]];
        while let Some(x) = frontier.pop() {
            for y in self.adj[x as usize].intersection(&within).iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    frontier.push(y);
                }
            }
        }
        seen == within
    }
}
