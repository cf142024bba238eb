//! Brute-force ground truth for every LCA variant.
//!
//! Nothing here tries to be fast beyond bitset reachability checks. The
//! faster algorithms in [`crate::exact`], [`crate::listing`] and
//! [`crate::witness`] are all tested against these functions.
//!
//! Conventions shared by every all-pairs output:
//! - the diagonal is included, with `LCA(u, u) = {u}`;
//! - lists are in reverse topological order (latest first).

use rayon::prelude::*;

use crate::error::{check_index, Error, Result};
use crate::graph::{Dag, Reachability};
use crate::matrix::{and_count, intersects, ones, set_bit, test_bit, words_for, BoolMatrix, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    Counts,
    Lists,
    Decision,
}

impl ReportKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportKind::Counts => "counts",
            ReportKind::Lists => "lists",
            ReportKind::Decision => "decision",
        }
    }
}

/// Per-pair results of an all-pairs LCA computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcaReport {
    /// `|LCA(u, v)|` for every pair.
    Counts(IntMatrix),
    /// A list of LCA vertex ids per pair, stored row-major (`u * n + v`).
    Lists { n: usize, lists: Vec<Vec<usize>> },
    /// One decision bit per pair.
    Decision(BoolMatrix),
}

impl LcaReport {
    pub fn n(&self) -> usize {
        match self {
            LcaReport::Counts(m) => m.rows(),
            LcaReport::Lists { n, .. } => *n,
            LcaReport::Decision(m) => m.rows(),
        }
    }

    pub fn kind(&self) -> ReportKind {
        match self {
            LcaReport::Counts(_) => ReportKind::Counts,
            LcaReport::Lists { .. } => ReportKind::Lists,
            LcaReport::Decision(_) => ReportKind::Decision,
        }
    }

    /// Panics unless this is a counts report.
    pub fn count(&self, u: usize, v: usize) -> u64 {
        match self {
            LcaReport::Counts(m) => m.get(u, v),
            _ => panic!("not a counts report"),
        }
    }

    /// Panics unless this is a lists report.
    pub fn list(&self, u: usize, v: usize) -> &[usize] {
        match self {
            LcaReport::Lists { n, lists } => &lists[u * n + v],
            _ => panic!("not a lists report"),
        }
    }

    /// Panics unless this is a decision report.
    pub fn bit(&self, u: usize, v: usize) -> bool {
        match self {
            LcaReport::Decision(m) => m.get(u, v),
            _ => panic!("not a decision report"),
        }
    }

    /// Keeps only the first `k` entries of every list.
    pub fn truncated(&self, k: usize) -> LcaReport {
        match self {
            LcaReport::Lists { n, lists } => LcaReport::Lists {
                n: *n,
                lists: lists.iter().map(|l| l[..l.len().min(k)].to_vec()).collect(),
            },
            other => other.clone(),
        }
    }
}

/// A proposed LCA (or `None`) for every ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateMatrix {
    n: usize,
    w: Vec<Option<usize>>,
}

impl CandidateMatrix {
    pub fn new(n: usize) -> Self {
        CandidateMatrix {
            n,
            w: vec![None; n * n],
        }
    }

    pub fn from_entries(n: usize, w: Vec<Option<usize>>) -> Result<Self> {
        if w.len() != n * n {
            return Err(Error::DimensionMismatch(format!("{} candidates for n = {n}", w.len())));
        }
        for &c in w.iter().flatten() {
            check_index(c, n)?;
        }
        Ok(CandidateMatrix { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.w[u * self.n + v]
    }

    pub fn set(&mut self, u: usize, v: usize, w: Option<usize>) {
        if let Some(x) = w {
            assert!(x < self.n, "candidate {x} out of range");
        }
        self.w[u * self.n + v] = w;
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.w
    }
}

/// Outcome of candidate verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// `bits[u,v] = 1` iff the candidate for `(u, v)` is correct.
    pub bits: BoolMatrix,
    /// True iff some candidate is wrong.
    pub any_error: bool,
}

/// True iff `w` is a common ancestor of `u` and `v` and no other common
/// ancestor is a descendant of `w`.
pub fn is_lca(closure: &BoolMatrix, u: usize, v: usize, w: usize) -> Result<bool> {
    let n = closure.rows();
    for x in [u, v, w] {
        check_index(x, n)?;
    }
    Ok(is_lca_unchecked(closure, u, v, w))
}

pub(crate) fn is_lca_unchecked(closure: &BoolMatrix, u: usize, v: usize, w: usize) -> bool {
    closure.get(w, u)
        && closure.get(w, v)
        && !closure
            .row_ones(w)
            .any(|x| x != w && closure.get(x, u) && closure.get(x, v))
}

/// The LCAs of `(u, v)` given their packed common-ancestor set: those whose
/// descendant set meets the common set only in themselves.
pub(crate) fn lcas_in<'a>(reach: &'a Reachability, common: &'a [u64]) -> impl Iterator<Item = usize> + 'a {
    ones(common).filter(move |&w| and_count(reach.closure().row(w), common) == 1)
}

/// `|LCA(u, v)|` for every pair.
pub fn count_lcas(g: &Dag) -> LcaReport {
    count_lcas_with(&Reachability::new(g))
}

pub(crate) fn count_lcas_with(reach: &Reachability) -> LcaReport {
    let n = reach.n();
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (0..n)
                .map(|v| lcas_in(reach, &reach.common_ancestors(u, v)).count() as u64)
                .collect()
        })
        .collect();
    LcaReport::Counts(IntMatrix::from_vec(n, n, rows.concat()))
}

/// Up to `k` topologically latest LCAs of every pair.
///
/// Scans vertices in reverse topological order and accepts `w` when it
/// reaches both endpoints but none of the LCAs accepted so far; stops after
/// `k` acceptances. With `k >= n` this lists every LCA.
pub fn k_lcas_bruteforce(g: &Dag, k: usize) -> LcaReport {
    k_lcas_with(&Reachability::new(g), k)
}

pub(crate) fn k_lcas_with(reach: &Reachability, k: usize) -> LcaReport {
    let n = reach.n();
    let stride = words_for(n);
    let order = reach.order();
    let rows: Vec<Vec<Vec<usize>>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut found_bits = vec![0u64; stride];
            (0..n)
                .map(|v| {
                    let common = reach.common_ancestors(u, v);
                    found_bits.fill(0);
                    let mut found = Vec::new();
                    for pos in (0..n).rev() {
                        if found.len() >= k {
                            break;
                        }
                        let w = order.vertex(pos);
                        if test_bit(&common, w) && !intersects(reach.closure().row(w), &found_bits) {
                            found.push(w);
                            set_bit(&mut found_bits, w);
                        }
                    }
                    found
                })
                .collect()
        })
        .collect();
    LcaReport::Lists {
        n,
        lists: rows.into_iter().flatten().collect(),
    }
}

/// Checks every candidate.
///
/// A `None` candidate is correct exactly when the pair has no common
/// ancestor; a vertex candidate is correct when it is an LCA of the pair.
pub fn verify_candidates(g: &Dag, cand: &CandidateMatrix) -> Result<Verification> {
    if cand.n() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} candidates rows for a graph on {} vertices",
            cand.n(),
            g.n()
        )));
    }
    let reach = Reachability::new(g);
    Ok(verify_candidates_with(&reach, cand))
}

pub(crate) fn verify_candidates_with(reach: &Reachability, cand: &CandidateMatrix) -> Verification {
    let n = reach.n();
    let d = reach.closure();
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (0..n)
                .map(|v| match cand.get(u, v) {
                    None => !intersects(reach.ancestor_rows().row(u), reach.ancestor_rows().row(v)),
                    Some(w) => is_lca_unchecked(d, u, v, w),
                })
                .collect()
        })
        .collect();
    let bits = BoolMatrix::from_fn(n, n, |u, v| rows[u][v]);
    let any_error = bits.count_ones() != n * n;
    Verification { bits, any_error }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::{random_dag, transitive_closure};
    use proptest::prelude::*;

    #[test]
    fn is_lca_examples() {
        assert!(is_lca(&transitive_closure(&diamond()), 1, 2, 0).unwrap());
        let d = transitive_closure(&chain3());
        assert!(!is_lca(&d, 1, 2, 0).unwrap());
        assert!(is_lca(&d, 1, 2, 1).unwrap());
        assert!(is_lca(&d, 1, 2, 3).is_err());
    }

    #[test]
    fn k_lcas_examples() {
        let g = butterfly();
        assert_eq!(k_lcas_bruteforce(&g, 2).list(2, 3), &[1, 0]);
        assert_eq!(k_lcas_bruteforce(&g, 1).list(2, 3), &[1]);
        assert_eq!(k_lcas_bruteforce(&g, 4).list(3, 3), &[3]);
        assert!(k_lcas_bruteforce(&g, 4).list(0, 1).is_empty());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_lcas(&butterfly()).count(2, 3), 2);
        assert_eq!(count_lcas(&Dag::empty(2)).count(0, 1), 0);
        assert_eq!(count_lcas(&diamond()).count(1, 2), 1);
        assert_eq!(count_lcas(&diamond()).count(2, 2), 1);
        assert_eq!(count_lcas(&Dag::empty(0)).n(), 0);
    }

    #[test]
    fn verify_examples() {
        let g = diamond();
        let lists = k_lcas_bruteforce(&g, 4);
        let mut cand = CandidateMatrix::new(4);
        for u in 0..4 {
            for v in 0..4 {
                cand.set(u, v, lists.list(u, v).first().copied());
            }
        }
        let out = verify_candidates(&g, &cand).unwrap();
        assert_eq!(out.bits.count_ones(), 16);
        assert!(!out.any_error);

        let g = chain3();
        let mut cand = CandidateMatrix::new(3);
        for u in 0..3 {
            for v in 0..3 {
                cand.set(u, v, Some(u.min(v)));
            }
        }
        cand.set(1, 2, Some(0));
        let out = verify_candidates(&g, &cand).unwrap();
        assert!(!out.bits.get(1, 2));
        assert!(out.bits.get(2, 1));
        assert!(out.any_error);

        let out = verify_candidates(&Dag::empty(2), &CandidateMatrix::new(2)).unwrap();
        assert!(out.bits.get(0, 1));
        assert!(out.any_error, "diagonal pairs have the LCA u, so NONE is wrong there");
    }

    #[test]
    fn candidate_matrix_validation() {
        assert!(CandidateMatrix::from_entries(2, vec![None; 3]).is_err());
        assert!(CandidateMatrix::from_entries(1, vec![Some(1)]).is_err());
        assert!(verify_candidates(&Dag::empty(2), &CandidateMatrix::new(3)).is_err());
    }

    /// Maximal common ancestors by an explicit double loop over (w, x).
    fn antichain_oracle(d: &BoolMatrix, u: usize, v: usize) -> Vec<usize> {
        let n = d.rows();
        let common = |w: usize| d.get(w, u) && d.get(w, v);
        (0..n)
            .filter(|&w| common(w) && !(0..n).any(|x| x != w && common(x) && d.get(w, x)))
            .collect()
    }

    #[test]
    fn full_lists_match_double_loop_seed_42() {
        let g = random_dag(8, 0.3, 42).unwrap();
        let d = transitive_closure(&g);
        let lists = k_lcas_bruteforce(&g, 8);
        for u in 0..8 {
            for v in 0..8 {
                let mut got = lists.list(u, v).to_vec();
                got.sort();
                assert_eq!(got, antichain_oracle(&d, u, v));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reports_are_consistent(n in 0usize..40, p in 0.02f64..0.4, seed in any::<u64>()) {
            let g = random_dag(n, p, seed).unwrap();
            let d = transitive_closure(&g);
            let counts = count_lcas(&g);
            let lists = k_lcas_bruteforce(&g, n);
            for u in 0..n {
                for v in 0..n {
                    let l = lists.list(u, v);
                    prop_assert_eq!(l.len() as u64, counts.count(u, v));
                    prop_assert_eq!(counts.count(u, v), counts.count(v, u));
                    let mut a = l.to_vec();
                    let mut b = lists.list(v, u).to_vec();
                    a.sort();
                    b.sort();
                    prop_assert_eq!(&a, &b);
                    prop_assert_eq!(&a, &antichain_oracle(&d, u, v));
                    for &w in l {
                        prop_assert!(is_lca(&d, u, v, w).unwrap());
                    }
                    // dominance: every common ancestor reaches a reported LCA
                    for x in 0..n {
                        if d.get(x, u) && d.get(x, v) {
                            prop_assert!(l.iter().any(|&w| d.get(x, w)));
                        }
                    }
                    // reverse topological order
                    let pos: Vec<usize> = l.iter().map(|&w| g.topo_order().position(w)).collect();
                    prop_assert!(pos.windows(2).all(|w| w[0] > w[1]));
                }
            }
        }
    }
}
