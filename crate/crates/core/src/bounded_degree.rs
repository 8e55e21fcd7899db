//! Bounded-degree reconstruction via skeletons: a partial graph whose
//! unknown pairs are confined to small disjoint cells, each cell carrying
//! the list of fill-ins that respect the instance. Completions of the
//! skeleton family are exactly the connected consistent graphs of bounded
//! maximum degree.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{for_each_ksubset, neighborhood_of_set, KSetInstance, Oracle};
use crate::layering::build_layering;
use crate::local_enum::LocalEnum;
use crate::par;
use crate::partial::{PairState, PartialGraph};
use crate::triangle_free::fill_subset_pairs;
use crate::vset::VertexSet;

/// Edge list of a graph on a cell's vertices, sorted.
pub type CellGraph = Vec<(u32, u32)>;

#[derive(Clone, Debug)]
pub struct Skeleton {
    /// Partial graph with unknown pairs exactly the within-cell pairs.
    pub h: PartialGraph,
    /// Disjoint ambiguous vertex groups, sorted by smallest member.
    pub cells: Vec<VertexSet>,
    /// Allowed fill-ins per cell.
    pub collections: Vec<Vec<CellGraph>>,
}

impl Skeleton {
    pub fn completion_count(&self) -> u64 {
        self.collections
            .iter()
            .fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64))
    }

    /// Structural invariants: disjoint cells of width at most `width_cap`,
    /// unknown pairs exactly the within-cell pairs, members confined to
    /// their cells.
    pub fn validate(&self, width_cap: Option<usize>) -> Result<()> {
        if self.cells.len() != self.collections.len() {
            return Err(Error::InvalidParameter(
                "cells and collections disagree in length".into(),
            ));
        }
        let mut union = VertexSet::new();
        for cell in &self.cells {
            if !union.is_disjoint(cell) {
                return Err(Error::InvalidParameter("cells overlap".into()));
            }
            if let Some(cap) = width_cap {
                if cell.len() > cap {
                    return Err(Error::InvalidParameter(format!(
                        "cell width {} exceeds {}",
                        cell.len(),
                        cap
                    )));
                }
            }
            union.union_with(cell);
        }
        let mut cell_pairs = HashSet::new();
        for cell in &self.cells {
            let ids = cell.to_vec();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    cell_pairs.insert((a, b));
                }
            }
        }
        let unknown: HashSet<(u32, u32)> = self.h.unknown_pairs().into_iter().collect();
        if unknown != cell_pairs {
            return Err(Error::InvalidParameter(
                "unknown pairs are not exactly the within-cell pairs".into(),
            ));
        }
        for (cell, coll) in self.cells.iter().zip(&self.collections) {
            for member in coll {
                for &(a, b) in member {
                    if !cell.contains(a) || !cell.contains(b) {
                        return Err(Error::InvalidParameter(
                            "collection member leaves its cell".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Streams every completion in odometer order over the collections.
    pub fn completions(&self) -> Completions<'_> {
        Completions {
            sk: self,
            indices: vec![0; self.cells.len()],
            done: self.collections.iter().any(|c| c.is_empty()),
        }
    }
}

pub struct Completions<'a> {
    sk: &'a Skeleton,
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for Completions<'_> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let mut g = self.sk.h.known_graph();
        for (i, &mi) in self.indices.iter().enumerate() {
            for &(a, b) in &self.sk.collections[i][mi] {
                g.add_edge(a, b).expect("cell edges are in range");
            }
        }
        // advance odometer, last cell fastest
        let mut pos = self.indices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < self.sk.collections[pos].len() {
                break;
            }
            self.indices[pos] = 0;
        }
        Some(g)
    }
}

/// Whether the unknown pair (u, v) can flip the connectivity of some
/// supergraph of `h[s]`: true exactly when no known path joins u and v
/// inside `s` and dropping only the known non-edges still leaves `s`
/// connected.
pub fn edge_importance(s: &VertexSet, h: &PartialGraph, u: u32, v: u32) -> Result<bool> {
    if !s.contains(u) || !s.contains(v) || u == v {
        return Err(Error::ContractViolation(format!(
            "pair ({u}, {v}) does not lie inside the set"
        )));
    }
    if h.state(u, v) != PairState::Unknown {
        return Err(Error::ContractViolation(format!(
            "pair ({u}, {v}) is not unknown"
        )));
    }
    Ok(importance_unchecked(s, h, u, v))
}

fn importance_unchecked(s: &VertexSet, h: &PartialGraph, u: u32, v: u32) -> bool {
    // (b): a path of known edges within s
    if h.reach_known(s, u).contains(v) {
        return false;
    }
    // (c): the complete graph minus known non-edges is disconnected on s
    let ids = s.to_vec();
    let mut adj: HashMap<u32, VertexSet> = ids.iter().map(|&a| (a, VertexSet::new())).collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if h.state(a, b) != PairState::NonEdge {
                adj.get_mut(&a).unwrap().insert(b);
                adj.get_mut(&b).unwrap().insert(a);
            }
        }
    }
    let start = ids[0];
    let mut seen = VertexSet::singleton(start);
    let mut frontier = vec![start];
    while let Some(x) = frontier.pop() {
        for y in adj[&x].intersection(s).iter() {
            if !seen.contains(y) {
                seen.insert(y);
                frontier.push(y);
            }
        }
    }
    seen.len() == s.len()
}

/// The skeleton family for maximum degree `d`. A connected graph of maximum
/// degree at most `d` is consistent with the instance exactly when it
/// completes one of the returned skeletons.
pub fn bd_skeletons(inst: &KSetInstance, d: usize) -> Result<Vec<Skeleton>> {
    let n = inst.n();
    let k = inst.k();
    if d < 1 {
        return Err(Error::InvalidParameter("max degree must be at least 1".into()));
    }
    if n < k {
        return Err(Error::InvalidParameter(format!("n = {n} < k = {k}")));
    }
    Oracle::new(inst)?;
    if inst.connected_count() == 0 {
        return Ok(Vec::new());
    }

    if k == 2 {
        // edges are read off directly; the family is the single fully-known
        // skeleton when it fits the class
        let mut g = Graph::new(n);
        for s in inst.connected_sets() {
            let ids = s.to_vec();
            g.add_edge(ids[0], ids[1])?;
        }
        if g.is_connected() && g.max_degree() <= d {
            return Ok(vec![Skeleton {
                h: PartialGraph::from_graph(&g),
                cells: Vec::new(),
                collections: Vec::new(),
            }]);
        }
        return Ok(Vec::new());
    }

    // step 1: fix a connected k-set, recover its neighborhood, and
    // enumerate the degree-bounded graphs on the closed neighborhood
    let t = inst.connected_sets().into_iter().next().unwrap();
    let oracle = Oracle::new(inst)?;
    let nb = neighborhood_of_set(&oracle, &t)?;
    let m = t.union(&nb);
    if nb.is_empty() && m.len() != n {
        return Ok(Vec::new());
    }
    let candidates = LocalEnum {
        inst,
        verts: m.clone(),
        seed: t.clone(),
        max_degree: d,
    }
    .collect();

    let whole = m.len() == n;
    let skeletons = par::map_collect(candidates, |edges| -> Result<Option<Skeleton>> {
        let mut h = PartialGraph::unknown(n);
        fill_subset_pairs(&mut h, &m, &edges);
        if whole {
            // the local enumeration already checked every k-set
            return Ok(Some(Skeleton {
                h,
                cells: Vec::new(),
                collections: Vec::new(),
            }));
        }
        let oracle = Oracle::new(inst).expect("instance verified complete");
        build_candidate_skeleton(&oracle, h, &t, d)
    });

    let mut out = Vec::new();
    for sk in skeletons {
        if let Some(sk) = sk? {
            debug_assert!(sk.validate(Some(d.max(k))).is_ok());
            out.push(sk);
        }
    }
    Ok(out)
}

/// Steps 2-4 for one closed-neighborhood candidate. `None` means the
/// candidate contradicts the instance and corresponds to no consistent
/// graph.
fn build_candidate_skeleton(
    oracle: &Oracle<'_>,
    h: PartialGraph,
    t: &VertexSet,
    d: usize,
) -> Result<Option<Skeleton>> {
    let k = oracle.k();
    let n = oracle.n();
    let lay = match build_layering(oracle, &h, t) {
        Ok(lay) => lay,
        Err(Error::NoConnectedCompletion) => return Ok(None),
        Err(e) => return Err(e),
    };
    let layers = &lay.layers;
    let mut cur = lay.refined;
    if (0..n as u32).any(|v| cur.known_degree(v) > d) {
        return Ok(None);
    }

    // cells: maximal same-layer groups with identical neighborhoods one
    // layer down
    let mut cells: Vec<VertexSet> = Vec::new();
    for i in 2..layers.len() {
        let prev = &layers[i - 1];
        let mut groups: BTreeMap<Vec<u32>, VertexSet> = BTreeMap::new();
        for v in layers[i].iter() {
            let sig = cur.known_neighbors(v).intersection(prev).to_vec();
            groups.entry(sig).or_default().insert(v);
        }
        for group in groups.into_values() {
            if group.len() > d {
                // no degree-d graph can share one neighbor among more
                // vertices than its degree bound allows
                return Ok(None);
            }
            if group.len() >= 2 {
                cells.push(group);
            }
        }
    }
    cells.sort_by_key(|c| c.min());

    // step 2: decide every same-layer pair that crosses two groups
    for i in 2..layers.len() {
        let prev = &layers[i - 1];
        let ids = layers[i].to_vec();
        for (a, &u) in ids.iter().enumerate() {
            for &v in &ids[a + 1..] {
                if cur.state(u, v) != PairState::Unknown {
                    continue;
                }
                if cells.iter().any(|c| c.contains(u) && c.contains(v)) {
                    continue;
                }
                let (u, v, w) = {
                    let cand_u = cur
                        .known_neighbors(u)
                        .intersection(prev)
                        .difference(cur.known_neighbors(v));
                    if let Some(w) = cand_u.min() {
                        (u, v, w)
                    } else {
                        let cand_v = cur
                            .known_neighbors(v)
                            .intersection(prev)
                            .difference(cur.known_neighbors(u));
                        match cand_v.min() {
                            Some(w) => (v, u, w),
                            // identical neighborhoods contradict the
                            // cross-group assumption
                            None => return Ok(None),
                        }
                    }
                };
                let mut below = VertexSet::new();
                for l in &layers[..i - 1] {
                    below.union_with(l);
                }
                let r = match cur.known_neighbors(w).intersection(&layers[i - 2]).min() {
                    Some(r) => r,
                    None => return Ok(None),
                };
                let anchor = cur.bfs_prefix(&below, r, k - 3);
                if anchor.len() < k - 3 {
                    return Ok(None);
                }
                let mut probe = anchor;
                probe.insert(u);
                probe.insert(v);
                probe.insert(w);
                debug_assert_eq!(probe.len(), k);
                let st = if oracle.is_connected_kset(&probe) {
                    PairState::Edge
                } else {
                    PairState::NonEdge
                };
                cur.set_state(u, v, st);
            }
        }
    }
    let post_step2 = cur.clone();
    debug_assert!({
        let unknown: HashSet<(u32, u32)> = post_step2.unknown_pairs().into_iter().collect();
        let mut cell_pairs = HashSet::new();
        for cell in &cells {
            let ids = cell.to_vec();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    cell_pairs.insert((a, b));
                }
            }
        }
        unknown == cell_pairs
    });

    // step 3: within-cell pairs decided by a connected (k-1)-witness, to a
    // fixpoint; cells in order, pairs lexicographic, restart after any
    // determination
    'fixpoint: loop {
        for cell in &cells {
            let ids = cell.to_vec();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    if cur.state(a, b) != PairState::Unknown {
                        continue;
                    }
                    let witness = step3_witness(&cur, a, b, k)
                        .map(|w| (w, b))
                        .or_else(|| step3_witness(&cur, b, a, k).map(|w| (w, a)));
                    if let Some((subgraph, lone)) = witness {
                        let mut probe = subgraph;
                        probe.insert(lone);
                        debug_assert_eq!(probe.len(), k);
                        let st = if oracle.is_connected_kset(&probe) {
                            PairState::Edge
                        } else {
                            PairState::NonEdge
                        };
                        cur.set_state(a, b, st);
                        continue 'fixpoint;
                    }
                }
            }
        }
        break;
    }
    if (0..n as u32).any(|v| cur.known_degree(v) > d) {
        return Ok(None);
    }

    // sweep every k-set once: fully decided sets must match the instance,
    // and the important unknown pairs of any set must share a single cell
    let mut pair_cell: HashMap<(u32, u32), usize> = HashMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let ids = cell.to_vec();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                pair_cell.insert((a, b), ci);
            }
        }
    }
    let mut contradiction = false;
    let mut sets_by_cell: Vec<Vec<(Vec<u32>, bool)>> = vec![Vec::new(); cells.len()];
    for_each_ksubset(n, k, |s| {
        if contradiction {
            return;
        }
        let required = oracle
            .instance()
            .classify(s)
            .expect("complete instances classify every subset");
        let ids = s.to_vec();
        let mut unknown_pairs = Vec::new();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                if cur.state(a, b) == PairState::Unknown {
                    unknown_pairs.push((a, b));
                }
            }
        }
        if unknown_pairs.is_empty() {
            if cur.connected_on_known(s) != required {
                contradiction = true;
            }
            return;
        }
        let mut important_cell: Option<usize> = None;
        let mut touched: HashSet<usize> = HashSet::new();
        for &(a, b) in &unknown_pairs {
            let ci = *pair_cell
                .get(&(a, b))
                .expect("every unknown pair lies inside a cell");
            touched.insert(ci);
            if importance_unchecked(s, &cur, a, b) {
                assert!(
                    important_cell.is_none() || important_cell == Some(ci),
                    "important unknown pairs of a k-set must share one cell"
                );
                important_cell = Some(ci);
            }
        }
        for ci in touched {
            sets_by_cell[ci].push((ids.clone(), required));
        }
    });
    if contradiction {
        return Ok(None);
    }

    // step 4: keep the cell fill-ins that satisfy every touching k-set
    // under the pessimistic reading of other cells' unknowns
    let mut collections: Vec<Vec<CellGraph>> = Vec::new();
    for (ci, cell) in cells.iter().enumerate() {
        let ids = cell.to_vec();
        let mut fixed: Vec<(u32, u32)> = Vec::new();
        let mut free: Vec<(u32, u32)> = Vec::new();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                match cur.state(a, b) {
                    PairState::Edge => fixed.push((a, b)),
                    PairState::Unknown => free.push((a, b)),
                    PairState::NonEdge => {}
                }
            }
        }
        let mut keep: Vec<CellGraph> = Vec::new();
        'member: for choice in 0u64..1 << free.len() {
            let mut member = fixed.clone();
            for (bit, &p) in free.iter().enumerate() {
                if choice >> bit & 1 != 0 {
                    member.push(p);
                }
            }
            member.sort_unstable();
            // degree budget: known edges leaving the cell plus the fill-in
            for &v in &ids {
                let outside = cur.known_neighbors(v).difference(cell).len();
                let inside = member
                    .iter()
                    .filter(|&&(a, b)| a == v || b == v)
                    .count();
                if outside + inside > d {
                    continue 'member;
                }
            }
            for (set_ids, required) in &sets_by_cell[ci] {
                if satisfies_polarity(&cur, cell, &member, set_ids, *required) != *required {
                    continue 'member;
                }
            }
            keep.push(member);
        }
        keep.sort();
        collections.push(keep);
    }

    Ok(Some(Skeleton {
        h: post_step2,
        cells,
        collections,
    }))
}

/// Connected known subgraph of order k-1 containing `u`, avoiding `v`, with
/// `v` a known non-neighbor of everything except possibly `u`. First match
/// in lexicographic subset order.
fn step3_witness(h: &PartialGraph, u: u32, v: u32, k: usize) -> Option<VertexSet> {
    let n = h.n();
    let others: Vec<u32> = (0..n as u32)
        .filter(|&w| w != u && w != v && h.state(v, w) == PairState::NonEdge)
        .collect();
    if k == 3 {
        // order-2 subgraph: any known neighbor of u among the eligible
        for &w in &others {
            if h.state(u, w) == PairState::Edge {
                return Some(VertexSet::from_ids([u, w]));
            }
        }
        return None;
    }
    let mut found = None;
    let mut search = |ids: &VertexSet| {
        if found.is_some() {
            return;
        }
        let mut sub = ids.clone();
        sub.insert(u);
        if sub.len() == k - 1 && h.connected_on_known(&sub) {
            found = Some(sub);
        }
    };
    for_each_combination(&others, k - 2, &mut search);
    found
}

fn for_each_combination<F: FnMut(&VertexSet)>(pool: &[u32], take: usize, f: &mut F) {
    if take > pool.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..take).collect();
    loop {
        f(&VertexSet::from_ids(idx.iter().map(|&i| pool[i])));
        let mut i = take;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < pool.len() - take + i {
                idx[i] += 1;
                for j in i + 1..take {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Connectivity of `set_ids` with the cell filled by `member`, unknowns in
/// other cells read pessimistically for the required status: non-edges when
/// the set must connect, edges when it must not.
fn satisfies_polarity(
    h: &PartialGraph,
    cell: &VertexSet,
    member: &[(u32, u32)],
    set_ids: &[u32],
    required: bool,
) -> bool {
    let member_has = |a: u32, b: u32| {
        let key = (a.min(b), a.max(b));
        member.binary_search(&key).is_ok()
    };
    let mut adj: HashMap<u32, VertexSet> = set_ids.iter().map(|&a| (a, VertexSet::new())).collect();
    for (i, &a) in set_ids.iter().enumerate() {
        for &b in &set_ids[i + 1..] {
            let present = if cell.contains(a) && cell.contains(b) {
                member_has(a, b)
            } else {
                match h.state(a, b) {
                    PairState::Edge => true,
                    PairState::NonEdge => false,
                    PairState::Unknown => !required,
                }
            };
            if present {
                adj.get_mut(&a).unwrap().insert(b);
                adj.get_mut(&b).unwrap().insert(a);
            }
        }
    }
    let within = VertexSet::from_ids(set_ids.iter().copied());
    let start = set_ids[0];
    let mut seen = VertexSet::singleton(start);
    let mut frontier = vec![start];
    while let Some(x) = frontier.pop() {
        for y in adj[&x].intersection(&within).iter() {
            if !seen.contains(y) {
                seen.insert(y);
                frontier.push(y);
            }
        }
    }
    seen.len() == set_ids.len()
}

/// Union of completions over the skeleton family: connected, degree-capped,
/// deduplicated, sorted by canonical edge list.
pub fn bd_enumerate(inst: &KSetInstance, d: usize) -> Result<Vec<Graph>> {
    let skeletons = bd_skeletons(inst, d)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for sk in &skeletons {
        for g in sk.completions() {
            if g.is_connected() && seen.insert(g.edges()) {
                debug_assert!(g.max_degree() <= d);
                out.push(g);
            }
        }
    }
    out.sort_by_key(|g| g.edges());
    Ok(out)
}
