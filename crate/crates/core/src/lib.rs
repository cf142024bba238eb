//! All-pairs lowest common ancestor (LCA) algorithms for directed acyclic
//! graphs.
//!
//! The crate covers exact-count detection (`|LCA(u, v)| = 1` and `= 2` via
//! randomized set fingerprints, made Las Vegas by deterministic set-size
//! verification), listing the `k` topologically latest LCAs of every pair,
//! the Max-Witness boolean product and its computation through an LCA
//! verifier, and executable versions of the reductions between LCA problems
//! and (hyper)clique detection. Every algorithm has a brute-force oracle in
//! [`oracle`] or [`reductions`] and is tested against it.
//!
//! All matrix kernels are word-packed cubic kernels.

pub mod error;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod listing;
pub mod matrix;
pub mod oracle;
pub mod reductions;
pub mod witness;

pub use error::{Error, Result};
pub use exact::{exact1_lca, exact2_lca, verify_pair, verify_unique, ExactEntry, ExactReport};
pub use graph::{
    ancestors, layered_dag, random_dag, random_layered_dag, suffix_subgraph, topological_order, transitive_closure,
    Dag, Reachability, TopoOrder,
};
pub use listing::{ap2_lca, ap3_lca, atleast_k, atmost_k, exact_k, latest_lca, list_k_lcas, BlockScheme};
pub use matrix::{
    bool_product, count_product, random_bool_matrix, weighted_modp_product, BoolMatrix, Fingerprint, IntMatrix,
};
pub use oracle::{count_lcas, is_lca, k_lcas_bruteforce, verify_candidates, CandidateMatrix, LcaReport, Verification};
pub use witness::{max_witness_direct, max_witness_via_verlca, WitnessMatrix};
