//! Structural uniqueness analysis: swap properties of connected k-sets,
//! clear/fake non-neighbor classification, component bounds for fake pairs,
//! and uniqueness certification by enumeration.

use crate::bounded_degree::bd_enumerate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{connected_ksets, KSetInstance};
use crate::triangle_free::tf_enumerate;
use crate::vset::VertexSet;

/// The class a graph is certified within.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReconstructionClass {
    TriangleFree,
    BoundedDegree(usize),
}

/// For an edge uv: every connected k-set through v avoiding u admits a swap
/// that pulls u in while staying connected. Holds for every edge of every
/// graph; exposed as a checkable building block.
pub fn swap_property_holds(g: &Graph, k: usize, u: u32, v: u32) -> Result<bool> {
    if !g.has_edge(u, v) {
        return Err(Error::ContractViolation(format!(
            "({u}, {v}) is not an edge"
        )));
    }
    let inst = connected_ksets(g, k)?;
    for s in inst.connected_sets() {
        if !s.contains(v) || s.contains(u) {
            continue;
        }
        let mut swapped = false;
        for vp in s.iter() {
            if vp == v {
                continue;
            }
            let mut probe = s.clone();
            probe.remove(vp);
            probe.insert(u);
            if inst.contains_connected(&probe) {
                swapped = true;
                break;
            }
        }
        if !swapped {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether u and v are certified non-adjacent by the instance: some listed
/// connected set through one of them, avoiding the other, has every swap
/// landing disconnected. Pairs lacking such a witness are fake neighbors.
pub fn clear_non_neighbors(inst: &KSetInstance, u: u32, v: u32) -> Result<bool> {
    if u == v {
        return Err(Error::InvalidParameter(
            "clear/fake classification needs two distinct vertices".into(),
        ));
    }
    if !inst.is_complete() {
        return Err(Error::Unsupported(
            "clear/fake classification needs a complete instance".into(),
        ));
    }
    Ok(one_sided_clear(inst, u, v)? || one_sided_clear(inst, v, u)?)
}

fn one_sided_clear(inst: &KSetInstance, u: u32, v: u32) -> Result<bool> {
    // a connected set through v avoiding u whose every swap disconnects
    for s in inst.connected_sets() {
        if !s.contains(v) || s.contains(u) {
            continue;
        }
        let mut all_disconnected = true;
        for vp in s.iter() {
            if vp == v {
                continue;
            }
            let mut probe = s.clone();
            probe.remove(vp);
            probe.insert(u);
            if inst.contains_connected(&probe) {
                all_disconnected = false;
                break;
            }
        }
        if all_disconnected {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A connected component of g - N[u] with at least k vertices, if one
/// exists (lowest minimum id first). Every vertex of such a component is a
/// clear non-neighbor of u.
pub fn isolated_certificate(g: &Graph, u: u32, k: usize) -> Option<VertexSet> {
    assert!((u as usize) < g.n(), "vertex {u} outside 0..{}", g.n());
    let mut removed = g.neighbors(u).clone();
    removed.insert(u);
    let mut remaining = VertexSet::full(g.n());
    remaining.subtract(&removed);
    while let Some(start) = remaining.min() {
        let comp = crate::graph::reach_via(&remaining, start, |v| g.neighbors(v));
        if comp.len() >= k {
            return Some(comp);
        }
        remaining.subtract(&comp);
    }
    None
}

/// Component analysis of a fake non-adjacent pair.
#[derive(Clone, Debug)]
pub struct FakeNeighborReport {
    /// Component of u in g - N(v).
    pub c_u: VertexSet,
    /// Component of v in g - N(u).
    pub c_v: VertexSet,
    /// Both components within the k-1 bound.
    pub bound_ok: bool,
    /// g + uv, produced when the union of the components is small enough to
    /// force it consistent; a direct non-uniqueness witness.
    pub witness: Option<Graph>,
}

pub fn fake_neighbor_analysis(g: &Graph, k: usize, u: u32, v: u32) -> Result<FakeNeighborReport> {
    if g.has_edge(u, v) {
        return Err(Error::ContractViolation(format!(
            "({u}, {v}) is an edge; fake-neighbor analysis needs a non-edge"
        )));
    }
    let inst = connected_ksets(g, k)?;
    if clear_non_neighbors(&inst, u, v)? {
        return Err(Error::ContractViolation(format!(
            "({u}, {v}) are clear non-neighbors"
        )));
    }
    let c_u = component_avoiding(g, u, v);
    let c_v = component_avoiding(g, v, u);
    let bound_ok = c_u.len() < k && c_v.len() < k;
    let witness = if c_u.union(&c_v).len() < k {
        Some(g.with_edge(u, v)?)
    } else {
        None
    };
    Ok(FakeNeighborReport {
        c_u,
        c_v,
        bound_ok,
        witness,
    })
}

/// Component of `a` in g - N(b).
fn component_avoiding(g: &Graph, a: u32, b: u32) -> VertexSet {
    let mut remaining = VertexSet::full(g.n());
    remaining.subtract(g.neighbors(b));
    crate::graph::reach_via(&remaining, a, |v| g.neighbors(v))
}

#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub unique: bool,
    /// Consistent class members other than the input graph.
    pub others: Vec<Graph>,
}

/// Certifies uniqueness by enumerating the class members consistent with
/// the graph's own instance.
pub fn certify_unique(g: &Graph, k: usize, class: ReconstructionClass) -> Result<UniquenessReport> {
    if !g.is_connected() {
        return Err(Error::InvalidParameter(
            "uniqueness certification needs a connected graph".into(),
        ));
    }
    match class {
        ReconstructionClass::TriangleFree => {
            if !g.triangle_free() {
                return Err(Error::InvalidParameter(
                    "graph is not triangle-free".into(),
                ));
            }
        }
        ReconstructionClass::BoundedDegree(d) => {
            if g.max_degree() > d {
                return Err(Error::InvalidParameter(format!(
                    "graph has maximum degree {} > {d}",
                    g.max_degree()
                )));
            }
        }
    }
    let inst = connected_ksets(g, k)?;
    let all = match class {
        ReconstructionClass::TriangleFree => tf_enumerate(&inst)?,
        ReconstructionClass::BoundedDegree(d) => bd_enumerate(&inst, d)?,
    };
    let others: Vec<Graph> = all.into_iter().filter(|h| !h.same_edges(g)).collect();
    Ok(UniquenessReport {
        unique: others.is_empty(),
        others,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_property_on_small_graphs() {
        // vacuous when k = n, exhaustive on the named fixtures
        assert!(swap_property_holds(&Graph::path(4), 4, 1, 2).unwrap());
        assert!(swap_property_holds(&Graph::path(4), 3, 1, 2).unwrap());
        for ids in [(0u32, 1u32), (1, 2), (2, 3), (3, 4), (0, 4)] {
            assert!(swap_property_holds(&Graph::cycle(5), 3, ids.0, ids.1).unwrap());
        }
        assert!(swap_property_holds(&Graph::path(4), 3, 0, 2).is_err());
    }

    #[test]
    fn clear_and_fake_examples() {
        let c6 = connected_ksets(&Graph::cycle(6), 3).unwrap();
        assert!(clear_non_neighbors(&c6, 0, 3).unwrap());

        let p4 = connected_ksets(&Graph::path(4), 3).unwrap();
        assert!(!clear_non_neighbors(&p4, 0, 2).unwrap());

        let p3 = connected_ksets(&Graph::path(3), 3).unwrap();
        assert!(!clear_non_neighbors(&p3, 0, 2).unwrap());

        assert!(clear_non_neighbors(&p4, 1, 1).is_err());
    }

    #[test]
    fn isolated_certificate_examples() {
        assert_eq!(
            isolated_certificate(&Graph::cycle(6), 0, 3).unwrap().to_vec(),
            vec![2, 3, 4]
        );
        assert!(isolated_certificate(&Graph::star(4), 0, 2).is_none());
        assert!(isolated_certificate(&Graph::path(4), 0, 3).is_none());
    }

    #[test]
    fn fake_neighbor_p3() {
        let report = fake_neighbor_analysis(&Graph::path(3), 3, 0, 2).unwrap();
        assert_eq!(report.c_u.to_vec(), vec![0]);
        assert_eq!(report.c_v.to_vec(), vec![2]);
        assert!(report.bound_ok);
        let witness = report.witness.unwrap();
        assert!(witness.same_edges(&Graph::complete(3)));
        let inst = connected_ksets(&Graph::path(3), 3).unwrap();
        assert!(inst.is_consistent(&witness).unwrap());
    }

    #[test]
    fn fake_neighbor_p4() {
        let report = fake_neighbor_analysis(&Graph::path(4), 3, 0, 2).unwrap();
        assert_eq!(report.c_u.to_vec(), vec![0]);
        assert_eq!(report.c_v.to_vec(), vec![2, 3]);
        assert!(report.bound_ok);
        assert!(report.witness.is_none());
    }

    #[test]
    fn fake_neighbor_contract() {
        assert!(fake_neighbor_analysis(&Graph::path(4), 3, 0, 1).is_err());
        assert!(fake_neighbor_analysis(&Graph::cycle(6), 3, 0, 3).is_err());
    }

    #[test]
    fn certify_examples() {
        let report =
            certify_unique(&Graph::star(4), 3, ReconstructionClass::TriangleFree).unwrap();
        assert!(report.unique);

        let report =
            certify_unique(&Graph::path(4), 3, ReconstructionClass::TriangleFree).unwrap();
        assert!(!report.unique);
        assert_eq!(report.others.len(), 1);
        let twin = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3)]).unwrap();
        assert!(report.others[0].same_edges(&twin));

        assert!(certify_unique(
            &Graph::complete(3),
            3,
            ReconstructionClass::TriangleFree
        )
        .is_err());
        assert!(certify_unique(
            &Graph::star(5),
            3,
            ReconstructionClass::BoundedDegree(2)
        )
        .is_err());
    }
}
