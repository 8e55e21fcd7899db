//! BFS-style layerings of partial graphs driven by connectivity probes.
//!
//! Starting from a seed set whose neighborhood is exact, a single refinement
//! round decides every pair between the open neighborhood and the rest of
//! the graph; iterating the round partitions the vertices into distance
//! layers with all pairs across non-adjacent layers decided.

use crate::error::{Error, Result};
use crate::instance::Oracle;
use crate::partial::{PairState, PartialGraph};
use crate::vset::VertexSet;

/// Result of [`build_layering`]: the distance layers L_0..L_l, the refined
/// partial graph, and the number of probes spent producing it.
#[derive(Clone, Debug)]
pub struct Layering {
    pub layers: Vec<VertexSet>,
    pub refined: PartialGraph,
    pub queries: u64,
}

impl Layering {
    /// Index of the layer holding `v`, if any.
    pub fn layer_of(&self, v: u32) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(v))
    }

    /// Debug text dump, one `L<i>: ids` line per layer.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.layers.iter().enumerate() {
            let ids: Vec<String> = l.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("L{}: {}\n", i, ids.join(" ")));
        }
        out
    }
}

fn check_seed(oracle: &Oracle<'_>, h: &PartialGraph, t: &VertexSet) -> Result<()> {
    if h.n() != oracle.n() {
        return Err(Error::ContractViolation(format!(
            "partial graph has {} vertices, instance has {}",
            h.n(),
            oracle.n()
        )));
    }
    if t.is_empty() || t.iter().last().is_some_and(|v| v as usize >= h.n()) {
        return Err(Error::ContractViolation(
            "seed set T empty or out of range".into(),
        ));
    }
    if !h.connected_on_known(t) {
        return Err(Error::ContractViolation(
            "seed set T is not connected in the known edges of H".into(),
        ));
    }
    if t.len() + 1 < oracle.k() {
        return Err(Error::ContractViolation(format!(
            "seed set T has {} < k - 1 = {} vertices",
            t.len(),
            oracle.k() - 1
        )));
    }
    if h.known_neighborhood_of_set(t).is_empty() {
        return Err(Error::ContractViolation(
            "seed set T has an empty known neighborhood".into(),
        ));
    }
    Ok(())
}

/// One refinement round around `t`. Decides every unknown pair between
/// N_H(T) and V - N_H[T]; needs at most |V| * |N_H(T)| probes, which is
/// asserted against the oracle counter. Assuming the target graph agrees
/// with H and has neighborhood exactly N_H(T) around T, every decision is
/// forced; with garbage premises the output is still deterministic and gets
/// discarded by downstream consistency filters.
pub fn layer_single(oracle: &Oracle<'_>, h: &PartialGraph, t: &VertexSet) -> Result<PartialGraph> {
    check_seed(oracle, h, t)?;
    let nb = h.known_neighborhood_of_set(t);
    Ok(layer_single_unchecked(oracle, h, t, &nb))
}

fn layer_single_unchecked(
    oracle: &Oracle<'_>,
    h: &PartialGraph,
    t: &VertexSet,
    nb: &VertexSet,
) -> PartialGraph {
    let before = oracle.queries();
    let k = oracle.k();
    let closed = t.union(nb);
    let mut out = h.clone();
    for y in nb.iter() {
        // connected (k-2)-subset of T adjacent to y: BFS inside T from y's
        // lowest-id neighbor there
        let start = h
            .known_neighbors(y)
            .intersection(t)
            .min()
            .expect("neighborhood member must touch T");
        let anchor = h.bfs_prefix(t, start, k.saturating_sub(2));
        for x in 0..h.n() as u32 {
            if closed.contains(x) || h.state(x, y) != PairState::Unknown {
                continue;
            }
            let mut probe = anchor.clone();
            probe.insert(x);
            probe.insert(y);
            debug_assert_eq!(probe.len(), k);
            let st = if oracle.is_connected_kset(&probe) {
                PairState::Edge
            } else {
                PairState::NonEdge
            };
            out.set_state(x, y, st);
        }
    }
    let spent = oracle.queries() - before;
    assert!(
        spent <= (h.n() as u64) * (nb.len() as u64),
        "single-round probe bound exceeded: {} > {} * {}",
        spent,
        h.n(),
        nb.len()
    );
    out
}

/// Iterated refinement from `t`: produces the layering (L_i) and a partial
/// supergraph in which every pair across layers i, j with |i - j| >= 2, and
/// every pair between consecutive layers beyond (L_0, L_1), is decided.
/// Costs at most |V|^2 probes (asserted). Vertices unreachable through the
/// decided edges mean no connected completion exists.
pub fn build_layering(oracle: &Oracle<'_>, h: &PartialGraph, t: &VertexSet) -> Result<Layering> {
    check_seed(oracle, h, t)?;
    let before = oracle.queries();
    let n = h.n();
    let full = VertexSet::full(n);

    // all pairs between T and vertices beyond N[T] are non-edges
    let mut cur = h.clone();
    let closed = t.union(&h.known_neighborhood_of_set(t));
    for x in t.iter() {
        for y in 0..n as u32 {
            if !closed.contains(y) && cur.state(x, y) == PairState::Unknown {
                cur.set_state(x, y, PairState::NonEdge);
            }
        }
    }

    let mut layers = vec![t.clone()];
    let mut covered = t.clone();
    loop {
        let next = cur.known_neighborhood_of_set(&covered);
        if next.is_empty() {
            if covered == full {
                break;
            }
            return Err(Error::NoConnectedCompletion);
        }
        cur = layer_single_unchecked(oracle, &cur, &covered, &next);
        covered.union_with(&next);
        layers.push(next);
    }

    let queries = oracle.queries() - before;
    assert!(
        queries <= (n as u64) * (n as u64),
        "layering probe bound exceeded: {queries} > {n}^2"
    );
    Ok(Layering {
        layers,
        refined: cur,
        queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instance::connected_ksets;

    fn set(ids: &[u32]) -> VertexSet {
        VertexSet::from_ids(ids.iter().copied())
    }

    #[test]
    fn single_round_decides_frontier_pair() {
        // P4 with only 01, 12 known; T = {0,1} decides pair (2,3) by probing
        // {1,2,3}
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::builder(4)
            .edge(0, 1)
            .unwrap()
            .edge(1, 2)
            .unwrap()
            .build();
        let out = layer_single(&oracle, &h, &set(&[0, 1])).unwrap();
        assert_eq!(out.state(2, 3), PairState::Edge);
        // pairs inside N[T] stay untouched
        assert_eq!(out.state(0, 2), PairState::Unknown);
        assert_eq!(out.state(0, 3), PairState::Unknown);
        assert!(out.is_partial_supergraph_of(&h));
        assert!(oracle.queries() <= 4);
    }

    #[test]
    fn single_round_against_the_twin_path() {
        // same h but probed against the instance of the relabeled path
        // 0-2-1-3; {1,2,3} is connected there too, so (2,3) still becomes an
        // edge even though h is incompatible with that target
        let twin = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3)]).unwrap();
        let inst = connected_ksets(&twin, 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::builder(4)
            .edge(0, 1)
            .unwrap()
            .edge(1, 2)
            .unwrap()
            .build();
        let out = layer_single(&oracle, &h, &set(&[0, 1])).unwrap();
        assert_eq!(out.state(2, 3), PairState::Edge);
    }

    #[test]
    fn single_round_vacuous_when_everything_known() {
        let g = Graph::path(3);
        let inst = connected_ksets(&g, 2).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::from_graph(&g);
        let out = layer_single(&oracle, &h, &set(&[0])).unwrap();
        assert_eq!(out.unknown_count(), 0);
        assert_eq!(oracle.queries(), 0);
    }

    #[test]
    fn contract_errors_name_failed_condition() {
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::unknown(4);
        // T not connected in known edges
        let err = layer_single(&oracle, &h, &set(&[0, 1])).unwrap_err();
        assert!(matches!(err, Error::ContractViolation(_)));
        // |T| < k-1
        let h2 = PartialGraph::builder(4).edge(0, 1).unwrap().build();
        let err = layer_single(&oracle, &h2, &set(&[0])).unwrap_err();
        assert!(err.to_string().contains("k - 1"));
    }

    #[test]
    fn layering_of_path() {
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::builder(4)
            .edge(0, 1)
            .unwrap()
            .edge(1, 2)
            .unwrap()
            .build();
        let lay = build_layering(&oracle, &h, &set(&[0, 1])).unwrap();
        let got: Vec<Vec<u32>> = lay.layers.iter().map(|l| l.to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(lay.queries <= 16);
        assert!(lay.refined.is_partial_supergraph_of(&h));
        assert_eq!(lay.dump(), "L0: 0 1\nL1: 2\nL2: 3\n");
    }

    #[test]
    fn layering_of_cycle_neighborhood() {
        // C5 with everything inside N[{0,1,2}] = V known
        let g = Graph::cycle(5);
        let inst = connected_ksets(&g, 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::from_graph(&g);
        let lay = build_layering(&oracle, &h, &set(&[0, 1, 2])).unwrap();
        let got: Vec<Vec<u32>> = lay.layers.iter().map(|l| l.to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn fully_known_graph_layering_is_bfs() {
        let g = Graph::cycle(6);
        let inst = connected_ksets(&g, 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::from_graph(&g);
        let lay = build_layering(&oracle, &h, &set(&[0, 1])).unwrap();
        let got: Vec<Vec<u32>> = lay.layers.iter().map(|l| l.to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![2, 5], vec![3, 4]]);
        assert_eq!(lay.queries, 0);
        assert_eq!(lay.refined.unknown_count(), 0);
    }

    #[test]
    fn coverage_failure_reports_no_completion() {
        // P4's instance but h pins vertex 3 away from everything reachable
        let inst = connected_ksets(&Graph::path(4), 3).unwrap();
        let oracle = Oracle::new(&inst).unwrap();
        let h = PartialGraph::builder(4)
            .edge(0, 1)
            .unwrap()
            .edge(1, 2)
            .unwrap()
            .non_edge(0, 2)
            .unwrap()
            .non_edge(0, 3)
            .unwrap()
            .non_edge(1, 3)
            .unwrap()
            .non_edge(2, 3)
            .unwrap()
            .build();
        assert!(matches!(
            build_layering(&oracle, &h, &set(&[0, 1])),
            Err(Error::NoConnectedCompletion)
        ));
    }
}
