use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Dag, Reachability};
use crate::listing::latest_lca_with;
use crate::matrix::BoolMatrix;
use crate::oracle::{verify_candidates, CandidateMatrix};

use super::hypergraph::Hypergraph3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Guess {
    pub u: usize,
    pub v: usize,
    pub candidate: usize,
    /// `[a, b, c]`.
    pub source: [usize; 3],
}

/// The verification gadget: `A x B` on top, a copy of `U` in the middle,
/// `(B x C) ⊔ (C x A)` at the bottom, plus an apex `s`.
#[derive(Clone, Debug)]
pub struct VerLcaGadget {
    pub graph: Dag,
    pub apex: usize,
    /// Candidate overrides `((b,c), (c,a)) -> (a,b)`, one per hyperedge
    /// `{a,b,c}` with one vertex in each of `A, B, C`.
    pub guesses: Vec<Guess>,
    top: HashMap<(usize, usize), usize>,
}

impl VerLcaGadget {
    /// Gadget vertex of the top tuple `(a, b)`.
    pub fn top(&self, a: usize, b: usize) -> Option<usize> {
        self.top.get(&(a, b)).copied()
    }
}

/// Edges: top to all of the bottom; `(a,b) -> u` iff `{u,a,b} ∈ E`;
/// `u -> (b,c)` iff `{u,b,c} ∈ E` and `u -> (c,a)` iff `{u,c,a} ∈ E`; the
/// apex to everything. For a hyperedge `{a,b,c}`, `(a,b)` is an LCA of
/// `((b,c), (c,a))` iff no `u` completes a 4-hyperclique.
pub fn build_4hyperclique_verlca_gadget(h: &Hypergraph3) -> Result<VerLcaGadget> {
    let part = h
        .partition()
        .ok_or_else(|| Error::PartitionMismatch("hypergraph has no partition".into()))?;
    let r = part.require(&["A", "B", "C", "U"])?;
    let (pa, pb, pc, pu) = (r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone());

    let mut next = 0;
    let mut top = HashMap::new();
    for a in pa.clone() {
        for b in pb.clone() {
            top.insert((a, b), next);
            next += 1;
        }
    }
    let mid: HashMap<usize, usize> = pu.clone().enumerate().map(|(i, u)| (u, next + i)).collect();
    next += pu.len();
    let mut bc = HashMap::new();
    for b in pb.clone() {
        for c in pc.clone() {
            bc.insert((b, c), next);
            next += 1;
        }
    }
    let mut ca = HashMap::new();
    for c in pc.clone() {
        for a in pa.clone() {
            ca.insert((c, a), next);
            next += 1;
        }
    }
    let apex = next;
    let n = next + 1;

    let mut edges: Vec<(usize, usize)> = (0..apex).map(|v| (apex, v)).collect();
    for (&(a, b), &t) in &top {
        edges.extend(bc.values().chain(ca.values()).map(|&v| (t, v)));
        for u in pu.clone() {
            if h.has_edge(u, a, b) {
                edges.push((t, mid[&u]));
            }
        }
    }
    for u in pu {
        for (&(b, c), &v) in &bc {
            if h.has_edge(u, b, c) {
                edges.push((mid[&u], v));
            }
        }
        for (&(c, a), &v) in &ca {
            if h.has_edge(u, c, a) {
                edges.push((mid[&u], v));
            }
        }
    }

    let mut guesses = Vec::new();
    for a in pa.clone() {
        for b in pb.clone() {
            for c in pc.clone() {
                if h.has_edge(a, b, c) {
                    guesses.push(Guess {
                        u: bc[&(b, c)],
                        v: ca[&(c, a)],
                        candidate: top[&(a, b)],
                        source: [a, b, c],
                    });
                }
            }
        }
    }
    guesses.sort_unstable();

    Ok(VerLcaGadget {
        graph: Dag::new(n, edges)?,
        apex,
        guesses,
        top,
    })
}

/// Whether `h` (parts `A, B, C, U`) has a 4-hyperclique, from one call to an
/// all-pairs LCA verifier.
///
/// Every pair gets its true latest LCA as candidate except the guessed
/// pairs; the verifier reports an error iff some guess is wrong, iff a
/// hyperclique exists. `verlca(g, cand)` must return the per-pair
/// correctness bits.
pub fn solve_4hyperclique_with(
    h: &Hypergraph3,
    verlca: impl FnOnce(&Dag, &CandidateMatrix) -> Result<BoolMatrix>,
) -> Result<bool> {
    let gadget = build_4hyperclique_verlca_gadget(h)?;
    let n = gadget.graph.n();
    let mut cand = CandidateMatrix::from_entries(n, latest_lca_with(&Reachability::new(&gadget.graph)))?;
    for g in &gadget.guesses {
        cand.set(g.u, g.v, Some(g.candidate));
        cand.set(g.v, g.u, Some(g.candidate));
    }
    let bits = verlca(&gadget.graph, &cand)?;
    if bits.rows() != n || bits.cols() != n {
        return Err(Error::SolverContractViolation(format!(
            "verifier returned {}x{} bits for {n} vertices",
            bits.rows(),
            bits.cols()
        )));
    }
    Ok(bits.count_ones() != n * n)
}

/// [`solve_4hyperclique_with`] using the brute-force verifier.
pub fn solve_4hyperclique_via_verlca(h: &Hypergraph3) -> Result<bool> {
    solve_4hyperclique_with(h, |g, cand| Ok(verify_candidates(g, cand)?.bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::transitive_closure;
    use crate::oracle::is_lca;
    use crate::reductions::hypergraph::{brute_hyperclique, random_partite_hypergraph};

    const SINGLE: [(&str, usize); 4] = [("A", 1), ("B", 1), ("C", 1), ("U", 1)];

    #[test]
    fn singleton_examples() {
        let h = random_partite_hypergraph(&SINGLE, 1.0, 0).unwrap();
        assert!(solve_4hyperclique_via_verlca(&h).unwrap());
        // drop {u, a, b}
        let h2 = h.without_edges(|e| *e == [0, 1, 3]);
        assert!(!solve_4hyperclique_via_verlca(&h2).unwrap());
        let g = build_4hyperclique_verlca_gadget(&h2).unwrap();
        assert_eq!(g.graph.n(), 5);
        assert_eq!(g.guesses.len(), 1);
    }

    #[test]
    fn guessed_pairs_match_lca() {
        for seed in 0..20 {
            let groups = [("A", 2), ("B", 2), ("C", 2), ("U", 3)];
            let h = random_partite_hypergraph(&groups, 0.7, seed).unwrap();
            let g = build_4hyperclique_verlca_gadget(&h).unwrap();
            let d = transitive_closure(&g.graph);
            for guess in &g.guesses {
                let [a, b, c] = guess.source;
                assert_eq!(g.top(a, b), Some(guess.candidate));
                let extends = (6..9).any(|u| h.is_clique(&[a, b, c, u]));
                assert_eq!(is_lca(&d, guess.u, guess.v, guess.candidate).unwrap(), !extends);
            }
            assert_eq!(solve_4hyperclique_via_verlca(&h).unwrap(), brute_hyperclique(&h, 4));
        }
    }
}
