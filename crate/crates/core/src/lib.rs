//! Reconstruction of labeled graphs from the connectivity of their k-vertex
//! subsets.
//!
//! Given the family of k-sets that induce connected subgraphs, this crate
//! enumerates every consistent connected triangle-free graph, enumerates
//! every consistent connected graph of bounded maximum degree through a
//! skeleton decomposition, certifies unique reconstructibility, and builds
//! partial instances from 3-CNF formulas whose solvability encodes
//! satisfiability. Brute-force oracles validate everything at small scale.
//!
//! The candidate sweeps fan out over rayon when the default `parallel`
//! feature is on; disabling it yields a sequential build with identical
//! output.

pub mod bounded_degree;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod instance;
pub mod io;
pub mod layering;
mod local_enum;
mod par;
pub mod partial;
pub mod reference;
pub mod triangle_free;
pub mod uniqueness;
pub mod vset;

pub use bounded_degree::{bd_enumerate, bd_skeletons, edge_importance, CellGraph, Skeleton};
pub use error::{Error, Result};
pub use graph::Graph;
pub use hardness::{
    parse_dimacs, reduce_3sat, solve_partial, CnfFormula, GadgetInstance, SolveOutcome,
};
pub use instance::{connected_ksets, neighborhood_of_set, KSetInstance, Oracle, QueryCounter};
pub use layering::{build_layering, layer_single, Layering};
pub use partial::{PairState, PartialGraph};
pub use reference::{
    brute_force_consistent, pendant_pairs, random_triangle_free_connected, BruteForceFilter,
};
pub use triangle_free::{tf_enumerate, tf_finish, tf_kernel, tf_large_degree, TfKernel};
pub use uniqueness::{
    certify_unique, clear_non_neighbors, fake_neighbor_analysis, isolated_certificate,
    swap_property_holds, FakeNeighborReport, ReconstructionClass, UniquenessReport,
};
pub use vset::VertexSet;
