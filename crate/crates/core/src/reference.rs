//! Brute-force oracles and test-fixture generators. Every algorithmic
//! module is validated against these at desk scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph};
use crate::instance::{for_each_ksubset, KSetInstance};
use crate::par;
use crate::vset::VertexSet;

/// Hard cap for [`brute_force_consistent`]; 2^C(8,2) masks with pruning is
/// the largest space worth exhausting.
pub const BRUTE_FORCE_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForceFilter {
    pub connected: bool,
    pub triangle_free: bool,
    pub max_degree: Option<usize>,
}

impl BruteForceFilter {
    pub fn connected_triangle_free() -> Self {
        BruteForceFilter {
            connected: true,
            triangle_free: true,
            max_degree: None,
        }
    }

    pub fn connected_max_degree(d: usize) -> Self {
        BruteForceFilter {
            connected: true,
            triangle_free: false,
            max_degree: Some(d),
        }
    }
}

struct SetConstraint {
    members: Vec<u32>,
    required_connected: bool,
}

/// Every labeled graph on `0..n` that matches the instance's constrained
/// k-sets and passes the filter, sorted by canonical edge list.
///
/// Enumeration walks edge masks in lexicographic pair order as a DFS and
/// prunes a branch as soon as a fully decided k-set has the wrong
/// connectivity, a triangle appears under the triangle-free filter, or a
/// degree exceeds the cap.
pub fn brute_force_consistent(
    inst: &KSetInstance,
    filter: &BruteForceFilter,
) -> Result<Vec<Graph>> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Unsupported(format!(
            "brute force refuses n = {n} > cap {BRUTE_FORCE_MAX_N}"
        )));
    }
    let npairs = pair_count(n);
    let pairs: Vec<(u32, u32)> = {
        let mut v = Vec::with_capacity(npairs);
        for u in 0..n as u32 {
            for w in u + 1..n as u32 {
                v.push((u, w));
            }
        }
        v
    };

    // k-sets indexed by the depth at which their last internal pair is
    // decided
    let mut by_last_pair: Vec<Vec<SetConstraint>> = (0..npairs).map(|_| Vec::new()).collect();
    let mut register = |s: &VertexSet, required: bool| {
        let members = s.to_vec();
        let mut idxs = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                idxs.push(crate::graph::pair_index(n, u, v));
            }
        }
        idxs.sort_unstable();
        let last = *idxs.last().expect("k >= 2");
        by_last_pair[last].push(SetConstraint {
            members,
            required_connected: required,
        });
    };
    if inst.is_complete() {
        for_each_ksubset(n, inst.k(), |s| {
            register(s, inst.contains_connected(s));
        });
    } else {
        for s in inst.connected_sets() {
            register(&s, true);
        }
        for s in inst.disconnected_sets() {
            register(&s, false);
        }
    }

    // split the first few decisions into independent prefix tasks
    let split = npairs.min(8);
    let tasks: Vec<u64> = (0..1u64 << split).collect();
    let results = par::map_collect(tasks, |prefix| {
        let mut state = DfsState {
            n,
            pairs: &pairs,
            by_last_pair: &by_last_pair,
            filter,
            adj: vec![VertexSet::new(); n],
            degrees: vec![0usize; n],
            mask: 0,
            out: Vec::new(),
        };
        if state.apply_prefix(prefix, split) {
            state.dfs(split);
        }
        state.out
    });

    let mut out = Vec::new();
    for chunk in results {
        for mask in chunk {
            out.push(Graph::from_edge_mask(n, mask));
        }
    }
    out.sort_by_key(|g| g.edges());
    Ok(out)
}

struct DfsState<'a> {
    n: usize,
    pairs: &'a [(u32, u32)],
    by_last_pair: &'a [Vec<SetConstraint>],
    filter: &'a BruteForceFilter,
    adj: Vec<VertexSet>,
    degrees: Vec<usize>,
    mask: u64,
    out: Vec<u64>,
}

impl DfsState<'_> {
    fn apply_prefix(&mut self, prefix: u64, split: usize) -> bool {
        for depth in 0..split {
            if !self.assign(depth, prefix >> depth & 1 != 0) {
                return false;
            }
        }
        true
    }

    /// Sets pair `depth` and runs the completion checks; false = prune.
    fn assign(&mut self, depth: usize, edge: bool) -> bool {
        let (u, v) = self.pairs[depth];
        if edge {
            if self.filter.triangle_free
                && !self.adj[u as usize].is_disjoint(&self.adj[v as usize])
            {
                return false;
            }
            if let Some(d) = self.filter.max_degree {
                if self.degrees[u as usize] + 1 > d || self.degrees[v as usize] + 1 > d {
                    return false;
                }
            }
            self.adj[u as usize].insert(v);
            self.adj[v as usize].insert(u);
            self.degrees[u as usize] += 1;
            self.degrees[v as usize] += 1;
            self.mask |= 1 << depth;
        }
        for c in &self.by_last_pair[depth] {
            if self.set_connected(c) != c.required_connected {
                if edge {
                    self.unassign(depth);
                }
                return false;
            }
        }
        true
    }

    fn unassign(&mut self, depth: usize) {
        if self.mask >> depth & 1 != 0 {
            let (u, v) = self.pairs[depth];
            self.adj[u as usize].remove(v);
            self.adj[v as usize].remove(u);
            self.degrees[u as usize] -= 1;
            self.degrees[v as usize] -= 1;
            self.mask &= !(1 << depth);
        }
    }

    fn set_connected(&self, c: &SetConstraint) -> bool {
        let start = c.members[0];
        let within = VertexSet::from_ids(c.members.iter().copied());
        let mut seen = VertexSet::singleton(start);
        let mut frontier = vec![start];
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

    fn dfs(&mut self, depth: usize) {
        if depth == self.pairs.len() {
            if !self.filter.connected || self.whole_connected() {
                self.out.push(self.mask);
            }
            return;
        }
        for edge in [false, true] {
            if self.assign(depth, edge) {
                self.dfs(depth + 1);
                self.unassign(depth);
            }
        }
    }

    fn whole_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = VertexSet::full(self.n);
        let mut seen = VertexSet::singleton(0);
        let mut frontier = vec![0u32];
        while let Some(x) = frontier.pop() {
            for y in self.adj[x as usize].iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    frontier.push(y);
                }
            }
        }
        seen == all
    }
}

/// Deterministic-per-seed connected triangle-free graph: a bipartite-leaning
/// random edge process with triangle rejection, then connectivity repair by
/// cross-component edges (always triangle-safe).
pub fn random_triangle_free_connected(n: usize, seed: u64) -> Graph {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sides: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
    let mut g = Graph::new(n);
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            pairs.push((u, v));
        }
    }
    for &(u, v) in &pairs {
        let p = if sides[u as usize] != sides[v as usize] {
            0.35
        } else {
            0.08
        };
        if rng.gen::<f64>() < p && g.neighbors(u).is_disjoint(g.neighbors(v)) {
            g.add_edge(u, v).unwrap();
        }
    }
    // repair: join components, lowest representative pairs first; a pair
    // across components can never close a triangle
    loop {
        let comps = g.components();
        if comps.len() <= 1 {
            break;
        }
        let u = comps[0].min().unwrap();
        let v = comps[1].min().unwrap();
        g.add_edge(u, v).unwrap();
    }
    debug_assert!(g.is_connected() && g.triangle_free());
    g
}

/// The pendant-pair family: a path u_1..u_p where every u_i carries two
/// fresh neighbors v_i, w_i whose mutual pair is invisible to small
/// connectivity queries. Ids: u_i = i-1, then v_i = p + 2(i-1),
/// w_i = p + 2(i-1) + 1.
pub fn pendant_pairs(p: usize) -> Graph {
    assert!(p >= 1);
    let n = 3 * p;
    let mut g = Graph::new(n);
    for i in 0..p as u32 - 1 {
        g.add_edge(i, i + 1).unwrap();
    }
    for i in 0..p as u32 {
        let v = p as u32 + 2 * i;
        g.add_edge(i, v).unwrap();
        g.add_edge(i, v + 1).unwrap();
    }
    g
}
