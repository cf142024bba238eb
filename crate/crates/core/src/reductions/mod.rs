//! Executable reductions between LCA problems and (hyper)clique detection.
//!
//! Each reduction comes as a gadget constructor plus a forward solver that
//! takes the LCA subroutine as a parameter, so gadgets can be checked
//! against brute-force clique oracles:
//!
//! - [`add_one_lca`]: every pair gains exactly one LCA, so Exact-k,
//!   AtMost-k and AtLeast-k each reduce to the same problem for `k + 1`.
//! - [`build_hyperclique_gadget`]: Exact-k instances (k = 3, 4, 5, 6) whose
//!   queried pairs have exactly `k` LCAs unless a hyperclique extends them.
//! - [`build_4clique_gadget`]: LCA counts of a three-layer graph decide
//!   4-clique.
//! - [`build_4hyperclique_verlca_gadget`]: one all-pairs verification call
//!   decides 3-uniform 4-hyperclique.
//!
//! The SAT-based families (Max-k-SAT through k-uniform hypercliques) have
//! exponentially large instances and are not constructed.

mod eqlca;
mod fourclique;
mod hypergraph;
mod plus_one;
mod verlca;

pub use eqlca::{
    build_hyperclique_gadget, required_groups, solve_hyperclique_via_eqlca, solve_hyperclique_with, GadgetInstance,
    GadgetVertex, QueryPair,
};
pub use fourclique::{
    brute_4clique, build_4clique_gadget, random_four_partite, solve_4clique_via_countlca, solve_4clique_with,
    FourCliqueGadget, FourPartiteGraph,
};
pub use hypergraph::{brute_hyperclique, default_group_names, random_partite_hypergraph, Hypergraph3, Partition};
pub use plus_one::add_one_lca;
pub use verlca::{
    build_4hyperclique_verlca_gadget, solve_4hyperclique_via_verlca, solve_4hyperclique_with, Guess, VerLcaGadget,
};
