//! Triangle-free reconstruction: unique completion from a known core,
//! kernel discovery around a high-degree vertex, and full enumeration.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{neighborhood_of_set, KSetInstance, Oracle};
use crate::layering::build_layering;
use crate::local_enum::LocalEnum;
use crate::par;
use crate::partial::{PairState, PartialGraph};
use crate::vset::VertexSet;

/// Output of [`tf_kernel`]: the exact neighborhood X of the chosen vertex,
/// the second neighborhood Y, and a partial graph with every pair touching
/// {u} ∪ X ∪ Y decided.
#[derive(Clone, Debug)]
pub struct TfKernel {
    pub x: VertexSet,
    pub y: VertexSet,
    pub h: PartialGraph,
}

fn check_finish_contract(h: &PartialGraph, t: &VertexSet) -> Result<()> {
    // the layering preconditions are checked by build_layering; here we add
    // the known-core requirement
    let core = t.union(&h.known_neighborhood_of_set(t));
    let ids = core.to_vec();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if h.state(u, v) == PairState::Unknown {
                return Err(Error::ContractViolation(format!(
                    "pair ({u}, {v}) inside N[T] is unknown"
                )));
            }
        }
    }
    Ok(())
}

/// The unique triangle-free supergraph of `h` consistent with the instance
/// whose neighborhood of `t` is exactly the known one, or `None`.
pub fn tf_finish(oracle: &Oracle<'_>, h: &PartialGraph, t: &VertexSet) -> Result<Option<Graph>> {
    let candidate = tf_finish_candidate(oracle, h, t, true)?;
    Ok(filter_candidate(oracle.instance(), candidate))
}

fn filter_candidate(inst: &KSetInstance, candidate: Option<Graph>) -> Option<Graph> {
    candidate.filter(|g| g.triangle_free() && inst.is_consistent(g).unwrap_or(false))
}

/// Runs the completion procedure without the final consistency filter. With
/// `checked` the known-core contract is verified up front; enumeration call
/// sites construct inputs that satisfy it.
fn tf_finish_candidate(
    oracle: &Oracle<'_>,
    h: &PartialGraph,
    t: &VertexSet,
    checked: bool,
) -> Result<Option<Graph>> {
    if checked {
        check_finish_contract(h, t)?;
    }
    let k = oracle.k();
    let lay = match build_layering(oracle, h, t) {
        Ok(lay) => lay,
        Err(Error::NoConnectedCompletion) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut cur = lay.refined;
    let layers = &lay.layers;

    for i in 2..layers.len() {
        let prev = &layers[i - 1];
        let here = layers[i].to_vec();
        for (a, &v) in here.iter().enumerate() {
            for &w in &here[a + 1..] {
                if cur.state(v, w) != PairState::Unknown {
                    continue;
                }
                let st = if !cur
                    .known_neighbors(v)
                    .intersection(cur.known_neighbors(w))
                    .intersection(prev)
                    .is_empty()
                {
                    // a shared neighbor one layer down forces a non-edge
                    PairState::NonEdge
                } else if k == 2 {
                    probe_state(oracle, VertexSet::from_ids([v, w]))
                } else {
                    let x_v = match cur.known_neighbors(v).intersection(prev).min() {
                        Some(x) => x,
                        None => return Ok(None),
                    };
                    let mut probe = VertexSet::from_ids([v, w, x_v]);
                    if k > 3 {
                        let mut below = VertexSet::new();
                        for l in &layers[..i - 1] {
                            below.union_with(l);
                        }
                        let start = match cur
                            .known_neighbors(x_v)
                            .intersection(&layers[i - 2])
                            .min()
                        {
                            Some(s) => s,
                            None => return Ok(None),
                        };
                        let anchor = cur.bfs_prefix(&below, start, k - 3);
                        if anchor.len() < k - 3 {
                            return Ok(None);
                        }
                        probe.union_with(&anchor);
                    }
                    debug_assert_eq!(probe.len(), k);
                    probe_state(oracle, probe)
                };
                cur.set_state(v, w, st);
            }
        }
    }
    debug_assert_eq!(cur.unknown_count(), 0);
    Ok(Some(cur.known_graph()))
}

fn probe_state(oracle: &Oracle<'_>, probe: VertexSet) -> PairState {
    if oracle.is_connected_kset(&probe) {
        PairState::Edge
    } else {
        PairState::NonEdge
    }
}

fn check_kernel_params(oracle: &Oracle<'_>, u: u32, seeds: &[u32]) -> Result<VertexSet> {
    let k = oracle.k();
    if k < 3 {
        return Err(Error::InvalidParameter(
            "kernel discovery needs k >= 3; k = 2 reads edges directly".into(),
        ));
    }
    if seeds.len() != 2 * k - 4 {
        return Err(Error::InvalidParameter(format!(
            "expected 2k - 4 = {} seed vertices, got {}",
            2 * k - 4,
            seeds.len()
        )));
    }
    let z = VertexSet::from_ids(seeds.iter().copied());
    if z.len() != seeds.len() {
        return Err(Error::InvalidParameter("duplicate seed vertices".into()));
    }
    if z.contains(u) {
        return Err(Error::InvalidParameter(
            "the center vertex may not appear among its seeds".into(),
        ));
    }
    if u as usize >= oracle.n() || z.iter().last().is_some_and(|v| v as usize >= oracle.n()) {
        return Err(Error::InvalidParameter("vertex id out of range".into()));
    }
    Ok(z)
}

/// Discovers N(u) and N({u} ∪ N(u)) from probes, assuming some triangle-free
/// consistent graph has all the seeds adjacent to `u`. Every decision is
/// forced under that premise; `None` signals probe answers no triangle-free
/// graph can produce.
pub fn tf_kernel(oracle: &Oracle<'_>, u: u32, seeds: &[u32]) -> Result<Option<TfKernel>> {
    let z = check_kernel_params(oracle, u, seeds)?;
    let k = oracle.k();
    let n = oracle.n();
    let mut h = PartialGraph::unknown(n);

    // membership in X = N(u): all {v,u} ∪ Z' connected and all {v} ∪ Z''
    // disconnected, for Z' and Z'' ranging over (k-2)- and (k-1)-subsets of
    // the seeds
    let zs = z.to_vec();
    let mut x = z.clone();
    for v in 0..n as u32 {
        if v == u || z.contains(v) {
            continue;
        }
        let all_s = zs
            .iter()
            .copied()
            .combinations(k - 2)
            .all(|zp| oracle.is_connected_kset(&with_members(&zp, &[v, u])));
        let in_x = all_s
            && zs
                .iter()
                .copied()
                .combinations(k - 1)
                .all(|zpp| !oracle.is_connected_kset(&with_members(&zpp, &[v])));
        if in_x {
            x.insert(v);
        }
    }
    for v in 0..n as u32 {
        if v == u {
            continue;
        }
        h.set_state(u, v, edge_state(x.contains(v)));
    }
    // a triangle-free neighborhood is independent
    let xv = x.to_vec();
    for (i, &a) in xv.iter().enumerate() {
        for &b in &xv[i + 1..] {
            h.set_state(a, b, PairState::NonEdge);
        }
    }

    // membership in Y = N({u} ∪ X) and the exact X-edges of every outside
    // vertex
    let mut y = VertexSet::new();
    for v in 0..n as u32 {
        if v == u || x.contains(v) {
            continue;
        }
        let mut in_y = false;
        let mut disc_s_union = VertexSet::new();
        for xp in xv.iter().copied().combinations(k - 2) {
            if oracle.is_connected_kset(&with_members(&xp, &[v, u])) {
                in_y = true;
            } else {
                for m in xp {
                    disc_s_union.insert(m);
                }
            }
        }
        if !in_y {
            for &a in &xv {
                h.set_state(a, v, PairState::NonEdge);
            }
            continue;
        }
        let mut conn_t_union = VertexSet::new();
        for xpp in xv.iter().copied().combinations(k - 1) {
            if oracle.is_connected_kset(&with_members(&xpp, &[v])) {
                for m in xpp {
                    conn_t_union.insert(m);
                }
            }
        }
        let nv = if !conn_t_union.is_empty() {
            conn_t_union
        } else {
            x.difference(&disc_s_union)
        };
        if nv.is_empty() {
            return Ok(None);
        }
        y.insert(v);
        for &a in &xv {
            h.set_state(a, v, edge_state(nv.contains(a)));
        }
    }

    // pairs inside Y: shared X-neighbor forces a non-edge, otherwise one
    // probe around an X-neighbor of one endpoint decides
    let yv = y.to_vec();
    for (i, &v) in yv.iter().enumerate() {
        for &w in &yv[i + 1..] {
            let nv = h.known_neighbors(v).intersection(&x);
            let nw = h.known_neighbors(w).intersection(&x);
            if !nv.is_disjoint(&nw) {
                h.set_state(v, w, PairState::NonEdge);
                continue;
            }
            let probe = match y_pair_probe(k, u, &x, v, &nv, w, &nw)
                .or_else(|| y_pair_probe(k, u, &x, w, &nw, v, &nv))
            {
                Some(p) => p,
                None => return Ok(None),
            };
            let st = probe_state(oracle, probe);
            h.set_state(v, w, st);
        }
    }

    // pairs between Y and the rest: anchor the Y vertex at one of its
    // X-neighbors and the pair is the only possible attachment
    for &yy in &yv {
        let x_y = h
            .known_neighbors(yy)
            .intersection(&x)
            .min()
            .expect("Y membership implies an X-neighbor");
        for o in 0..n as u32 {
            if o == u || x.contains(o) || y.contains(o) {
                continue;
            }
            let mut probe = VertexSet::from_ids([o, yy, x_y]);
            if k > 3 {
                probe.insert(u);
                for f in x.iter() {
                    if probe.len() == k {
                        break;
                    }
                    if f != x_y {
                        probe.insert(f);
                    }
                }
                if probe.len() < k {
                    return Ok(None);
                }
            }
            let st = probe_state(oracle, probe);
            h.set_state(yy, o, st);
        }
    }

    debug_assert!({
        let touched = {
            let mut s = x.union(&y);
            s.insert(u);
            s
        };
        (0..n as u32).all(|a| {
            (a + 1..n as u32).all(|b| {
                !(touched.contains(a) || touched.contains(b))
                    || h.state(a, b) != PairState::Unknown
            })
        })
    });
    Ok(Some(TfKernel { x, y, h }))
}

/// Probe set deciding a Y-pair (a, b) when a has enough X-non-neighbors:
/// {a, b, x_b} for k = 3, otherwise {u, a, b, x_b} plus k - 4 fillers from
/// X avoiding N(a).
fn y_pair_probe(
    k: usize,
    u: u32,
    x: &VertexSet,
    a: u32,
    na: &VertexSet,
    b: u32,
    nb: &VertexSet,
) -> Option<VertexSet> {
    let x_b = nb.min()?;
    if k == 3 {
        return Some(VertexSet::from_ids([a, b, x_b]));
    }
    let mut fillers = x.difference(na);
    fillers.remove(x_b);
    if fillers.len() < k - 4 {
        return None;
    }
    let mut probe = VertexSet::from_ids([u, a, b, x_b]);
    for f in fillers.iter() {
        if probe.len() == k {
            break;
        }
        probe.insert(f);
    }
    Some(probe)
}

fn with_members(base: &[u32], extra: &[u32]) -> VertexSet {
    let mut s = VertexSet::from_ids(base.iter().copied());
    for &v in extra {
        s.insert(v);
    }
    s
}

fn edge_state(is_edge: bool) -> PairState {
    if is_edge {
        PairState::Edge
    } else {
        PairState::NonEdge
    }
}

/// The unique triangle-free consistent graph with all seeds adjacent to
/// `u`, or `None`. Composes the kernel with the completion around
/// T = {u} ∪ X.
pub fn tf_large_degree(oracle: &Oracle<'_>, u: u32, seeds: &[u32]) -> Result<Option<Graph>> {
    let candidate = tf_large_degree_candidate(oracle, u, seeds)?;
    Ok(filter_candidate(oracle.instance(), candidate))
}

fn tf_large_degree_candidate(
    oracle: &Oracle<'_>,
    u: u32,
    seeds: &[u32],
) -> Result<Option<Graph>> {
    let kernel = match tf_kernel(oracle, u, seeds)? {
        Some(kr) => kr,
        None => return Ok(None),
    };
    let mut t = kernel.x.clone();
    t.insert(u);
    if kernel.y.is_empty() {
        if t.len() == oracle.n() {
            debug_assert_eq!(kernel.h.unknown_count(), 0);
            return Ok(Some(kernel.h.known_graph()));
        }
        // vertices beyond the kernel are cut off from T by known non-edges
        return Ok(None);
    }
    tf_finish_candidate(oracle, &kernel.h, &t, false)
}

/// Every connected triangle-free graph consistent with the complete
/// instance, sorted by canonical edge list.
pub fn tf_enumerate(inst: &KSetInstance) -> Result<Vec<Graph>> {
    let n = inst.n();
    let k = inst.k();
    if n < k {
        return Err(Error::Unsupported(format!(
            "instance has n = {n} < k = {k}"
        )));
    }
    Oracle::new(inst)?; // demands completeness

    if k == 2 {
        // the connected 2-sets literally list the edges
        let mut g = Graph::new(n);
        for s in inst.connected_sets() {
            let ids = s.to_vec();
            g.add_edge(ids[0], ids[1])?;
        }
        return Ok(if g.is_connected() && g.triangle_free() {
            vec![g]
        } else {
            vec![]
        });
    }

    // case 1: some vertex has degree at least 2k - 4; guess it and 2k - 4 of
    // its neighbors
    let mut jobs: Vec<(u32, Vec<u32>)> = Vec::new();
    for u in 0..n as u32 {
        for xs in (0..n as u32).filter(|&v| v != u).combinations(2 * k - 4) {
            jobs.push((u, xs));
        }
    }
    let case1 = par::map_collect(jobs, |(u, xs)| {
        let oracle = Oracle::new(inst).expect("instance verified complete");
        tf_large_degree_candidate(&oracle, u, &xs)
    });

    // case 2: maximum degree below 2k - 4; fix one connected k-set, recover
    // its exact neighborhood, and sweep the bounded-degree graphs on the
    // closed neighborhood
    let mut case2: Vec<Result<Option<Graph>>> = Vec::new();
    let connected = inst.connected_sets();
    if let Some(t) = connected.first() {
        let oracle = Oracle::new(inst)?;
        let nb = neighborhood_of_set(&oracle, t)?;
        let m = t.union(&nb);
        if !nb.is_empty() || m.len() == n {
            let cap = (2 * k).saturating_sub(5);
            let fs = LocalEnum {
                inst,
                verts: m.clone(),
                seed: t.clone(),
                max_degree: cap,
            }
            .collect();
            let whole = m.len() == n;
            case2 = par::map_collect(fs, |edges| {
                let mut h = PartialGraph::unknown(n);
                fill_subset_pairs(&mut h, &m, &edges);
                if whole {
                    Ok(Some(h.known_graph()))
                } else {
                    let oracle = Oracle::new(inst).expect("instance verified complete");
                    tf_finish_candidate(&oracle, &h, t, false)
                }
            });
        }
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for cand in case1.into_iter().chain(case2) {
        if let Some(g) = cand? {
            if seen.insert(g.edges())
                && g.is_connected()
                && g.triangle_free()
                && inst.is_consistent(&g)?
            {
                out.push(g);
            }
        }
    }
    out.sort_by_key(|g| g.edges());
    Ok(out)
}

/// Marks every pair within `subset` known: the listed edges, everything
/// else a non-edge.
pub(crate) fn fill_subset_pairs(h: &mut PartialGraph, subset: &VertexSet, edges: &[(u32, u32)]) {
    let has: HashSet<(u32, u32)> = edges.iter().copied().collect();
    let ids = subset.to_vec();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            h.set_state(a, b, edge_state(has.contains(&(a, b))));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::connected_ksets;

    fn set(ids: &[u32]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    fn edge_lists(graphs: &[Graph]) -> Vec<Vec<(u32, u32)>> {
        graphs.iter().map(|g| g.edges()).collect()
    }

    #[test]
    fn finish_completes_path() {
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::builder(4)
            .edge(0, 1)
            .unwrap()
            .edge(1, 2)
            .unwrap()
            .non_edge(0, 2)
            .unwrap()
            .build();
        let g = tf_finish(&oracle, &h, &set(&[0, 1])).unwrap().unwrap();
        assert!(g.same_edges(&Graph::path(4)));
    }

    #[test]
    fn finish_completes_c6_from_core() {
        let c6 = Graph::cycle(6);
        let inst = connected_ksets(&c6, 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        // all pairs inside N[{0,1}] = {5,0,1,2} known as in C6
        let h = PartialGraph::builder(6)
            .edge(0, 1)
            .unwrap()
            .edge(0, 5)
            .unwrap()
            .edge(1, 2)
            .unwrap()
            .non_edge(0, 2)
            .unwrap()
            .non_edge(1, 5)
            .unwrap()
            .non_edge(2, 5)
            .unwrap()
            .build();
        let g = tf_finish(&oracle, &h, &set(&[0, 1])).unwrap().unwrap();
        assert!(g.same_edges(&c6));
    }

    #[test]
    fn finish_contract_gate() {
        let inst = KSetInstance::complete(3, 3, vec![set(&[0, 1, 2])]).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::unknown(3);
        let err = tf_finish(&oracle, &h, &set(&[0, 1])).unwrap_err();
        assert!(matches!(err, Error::ContractViolation(_)), "{err}");
    }

    #[test]
    fn kernel_on_star() {
        let inst = connected_ksets(&Graph::star(5), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let kr = tf_kernel(&oracle, 0, &[1, 2]).unwrap().unwrap();
        assert_eq!(kr.x.to_vec(), vec![1, 2, 3, 4, 5]);
        assert!(kr.y.is_empty());
        assert_eq!(kr.h.unknown_count(), 0);
        assert!(kr.h.known_graph().same_edges(&Graph::star(5)));
    }

    #[test]
    fn kernel_on_c6() {
        let inst = connected_ksets(&Graph::cycle(6), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let kr = tf_kernel(&oracle, 0, &[1, 5]).unwrap().unwrap();
        assert_eq!(kr.x.to_vec(), vec![1, 5]);
        assert_eq!(kr.y.to_vec(), vec![2, 4]);
        // every pair touching {0,1,5,2,4} is decided
        for &a in &[0u32, 1, 5, 2, 4] {
            for b in 0..6u32 {
                if a != b {
                    assert_ne!(kr.h.state(a, b), PairState::Unknown, "pair ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn kernel_parameter_errors() {
        let inst = connected_ksets(&Graph::cycle(6), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        assert!(tf_kernel(&oracle, 0, &[1]).is_err());
        assert!(tf_kernel(&oracle, 0, &[1, 1]).is_err());
        assert!(tf_kernel(&oracle, 0, &[0, 1]).is_err());
    }

    #[test]
    fn large_degree_examples() {
        let star = connected_ksets(&Graph::star(3), 3).unwrap();
        let oracle = Oracle::new(&star).unwrap();
        let g = tf_large_degree(&oracle, 0, &[1, 2]).unwrap().unwrap();
        assert!(g.same_edges(&Graph::star(3)));

        let c6 = connected_ksets(&Graph::cycle(6), 3).unwrap();
        let oracle = Oracle::new(&c6).unwrap();
        let g = tf_large_degree(&oracle, 0, &[1, 5]).unwrap().unwrap();
        assert!(g.same_edges(&Graph::cycle(6)));

        let p4 = connected_ksets(&Graph::path(4), 3).unwrap();
        let oracle = Oracle::new(&p4).unwrap();
        let g = tf_large_degree(&oracle, 1, &[0, 2]).unwrap().unwrap();
        assert!(g.same_edges(&Graph::path(4)));
    }

    #[test]
    fn bad_seed_guess_never_claims_wrong_unique() {
        // 2 is not a neighbor of 0 in C6: the candidate must die in the
        // final filter rather than surface as a reconstruction
        let c6 = Graph::cycle(6);
        let inst = connected_ksets(&c6, 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let out = tf_large_degree(&oracle, 0, &[1, 2]).unwrap();
        if let Some(g) = out {
            assert!(g.same_edges(&c6));
        }
    }

    #[test]
    fn enumerate_path_pair() {
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let out = tf_enumerate(&inst).unwrap();
        let twin = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3)]).unwrap();
        assert_eq!(
            edge_lists(&out),
            vec![Graph::path(4).edges(), twin.edges()]
        );
    }

    #[test]
    fn enumerate_stars_unique() {
        for r in 3..=8usize {
            let inst = connected_ksets(&Graph::star(r), 3).unwrap();
            let out = tf_enumerate(&inst).unwrap();
            assert_eq!(out.len(), 1, "K_1_{r} must be unique");
            assert!(out[0].same_edges(&Graph::star(r)));
        }
    }

    #[test]
    fn enumerate_c5_unique() {
        let inst = connected_ksets(&Graph::cycle(5), 3).unwrap();
        let out = tf_enumerate(&inst).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].same_edges(&Graph::cycle(5)));
    }

    #[test]
    fn enumerate_k2_readout() {
        let inst = connected_ksets(&Graph::path(5), 2).unwrap();
        let out = tf_enumerate(&inst).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].same_edges(&Graph::path(5)));

        // k = 2 instance of a triangle: readout exists but fails the class
        let inst = connected_ksets(&Graph::complete(3), 2).unwrap();
        assert!(tf_enumerate(&inst).unwrap().is_empty());
    }

    #[test]
    fn enumerate_is_deterministic() {
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let a = edge_lists(&tf_enumerate(&inst).unwrap());
        let b = edge_lists(&tf_enumerate(&inst).unwrap());
        assert_eq!(a, b);
    }
}
