//! Detection of pairs with exactly one or exactly two LCAs, returning those
//! LCAs.
//!
//! For a pair `(u, v)` with LCA set `S`,
//! `Anc(u) ∩ Anc(v) = ⋃_{w ∈ S} Anc(w)`, and conversely any `S` satisfying
//! that equation contains every LCA. So `w` is the unique LCA iff
//! `Anc(u) ∩ Anc(v) = Anc(w)`, and `{a, b}` (an antichain) is the LCA set iff
//! `Anc(u) ∩ Anc(v) = Anc(a) ∪ Anc(b)`.
//!
//! Set equality is tested with a random additive fingerprint
//! `f: V -> Z_p`: `F(u,v) = f(Anc(u) ∩ Anc(v))` comes from one weighted
//! product of the closure, `f(Anc(x)) = F(x,x)`, and
//! `H(a,b) = f(Anc(a) ∪ Anc(b)) = f(V) - f(¬Anc(a) ∩ ¬Anc(b))` from one
//! weighted product of the complemented closure. Matches are looked up in
//! sorted tables.
//!
//! Every match is then checked deterministically by comparing set sizes:
//! given the inclusion `Anc(w) ⊆ Anc(u) ∩ Anc(v)` (resp. the union), equal
//! cardinalities mean equal sets. Any failed check discards the sample and
//! redraws `f`, so completed runs are always exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Dag, Reachability};
use crate::matrix::{count_product_transposed, weighted_modp_product, BoolMatrix, Fingerprint, IntMatrix};

/// Resamples allowed after the first fingerprint before giving up.
pub const MAX_RESAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactEntry {
    NotThisCount,
    /// The unique LCA.
    One(usize),
    /// The two LCAs, smaller id first.
    Two(usize, usize),
}

impl ExactEntry {
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            ExactEntry::NotThisCount => Vec::new(),
            ExactEntry::One(w) => vec![w],
            ExactEntry::Two(a, b) => vec![a, b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactReport {
    n: usize,
    /// 1 or 2.
    target: usize,
    entries: Vec<ExactEntry>,
    /// Fingerprints drawn, including the successful one.
    pub attempts: usize,
    /// Fingerprint matches rejected by verification, over all attempts.
    pub rejected_matches: usize,
}

impl ExactReport {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.target
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> ExactEntry {
        self.entries[u * self.n + v]
    }

    pub fn is_found(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != ExactEntry::NotThisCount
    }

    pub fn entries(&self) -> &[ExactEntry] {
        &self.entries
    }

    /// Decision bits: pair has exactly `target` LCAs.
    pub fn to_bits(&self) -> BoolMatrix {
        BoolMatrix::from_fn(self.n, self.n, |u, v| self.is_found(u, v))
    }
}

/// True iff `w` is the unique LCA of `(u, v)`.
///
/// `intersect_counts[x,y]` must be `|Anc(x) ∩ Anc(y)|` for all `x, y`; its
/// diagonal therefore holds `|Anc(x)|`.
pub fn verify_unique(closure: &BoolMatrix, intersect_counts: &IntMatrix, u: usize, v: usize, w: usize) -> bool {
    closure.get(w, u) && closure.get(w, v) && intersect_counts.get(w, w) == intersect_counts.get(u, v)
}

/// True iff `{a, b}` is exactly the LCA set of `(u, v)`.
///
/// `union_counts[a,b]` must be `|Anc(a) ∪ Anc(b)|`. With `a, b` distinct
/// incomparable common ancestors, `Anc(a) ∪ Anc(b) ⊆ Anc(u) ∩ Anc(v)`, so
/// equal sizes force equality and hence `LCA(u, v) = {a, b}`.
pub fn verify_pair(
    closure: &BoolMatrix,
    intersect_counts: &IntMatrix,
    union_counts: &IntMatrix,
    u: usize,
    v: usize,
    a: usize,
    b: usize,
) -> bool {
    a != b
        && closure.get(a, u)
        && closure.get(a, v)
        && closure.get(b, u)
        && closure.get(b, v)
        && !closure.get(a, b)
        && !closure.get(b, a)
        && intersect_counts.get(u, v) == union_counts.get(a, b)
}

/// Deterministic tables shared by all fingerprint attempts.
struct SizeTables {
    reach: Reachability,
    complement_rows: BoolMatrix,
    intersect: IntMatrix,
    union: Option<IntMatrix>,
}

impl SizeTables {
    fn new(g: &Dag, with_union: bool) -> Self {
        let reach = Reachability::new(g);
        let n = g.n();
        let intersect = count_product_transposed(reach.ancestor_rows(), reach.ancestor_rows());
        let complement_rows = reach.ancestor_rows().complement();
        let union = with_union.then(|| {
            let outside = count_product_transposed(&complement_rows, &complement_rows);
            IntMatrix::from_vec(n, n, outside.as_slice().iter().map(|&c| n as u64 - c).collect())
        });
        SizeTables {
            reach,
            complement_rows,
            intersect,
            union,
        }
    }
}

/// First value-equal entry in a table sorted by value.
fn lookup<T: Copy>(table: &[(u64, T)], value: u64) -> Option<T> {
    let i = table.partition_point(|e| e.0 < value);
    table.get(i).filter(|e| e.0 == value).map(|e| e.1)
}

struct Attempt {
    entries: Vec<ExactEntry>,
    rejected: usize,
}

fn attempt_exact1(tables: &SizeTables, f: &Fingerprint) -> Result<(Attempt, IntMatrix)> {
    let d = tables.reach.closure();
    let n = d.rows();
    let fp = weighted_modp_product(d, f)?;
    let mut by_anc: Vec<(u64, usize)> = (0..n).map(|x| (fp.get(x, x), x)).collect();
    by_anc.sort_unstable();

    let rows: Vec<(Vec<ExactEntry>, usize)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rejected = 0;
            let row = (0..n)
                .map(|v| match lookup(&by_anc, fp.get(u, v)) {
                    Some(w) if verify_unique(d, &tables.intersect, u, v, w) => ExactEntry::One(w),
                    Some(_) => {
                        rejected += 1;
                        ExactEntry::NotThisCount
                    }
                    None => ExactEntry::NotThisCount,
                })
                .collect();
            (row, rejected)
        })
        .collect();
    let rejected = rows.iter().map(|r| r.1).sum();
    let entries = rows.into_iter().flat_map(|r| r.0).collect();
    Ok((Attempt { entries, rejected }, fp))
}

fn attempt_exact2(tables: &SizeTables, f: &Fingerprint) -> Result<Attempt> {
    let (unique, fp) = attempt_exact1(tables, f)?;
    let d = tables.reach.closure();
    let union = tables.union.as_ref().expect("union table");
    let n = d.rows();
    let outside = weighted_modp_product(&tables.complement_rows.transpose(), f)?;
    let total = f.total();
    let mut by_union: Vec<(u64, (usize, usize))> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            by_union.push((f.sub(total, outside.get(a, b)), (a, b)));
        }
    }
    by_union.sort_unstable();

    let rows: Vec<(Vec<ExactEntry>, usize)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rejected = 0;
            let row = (0..n)
                .map(|v| {
                    if unique.entries[u * n + v] != ExactEntry::NotThisCount {
                        return ExactEntry::NotThisCount;
                    }
                    match lookup(&by_union, fp.get(u, v)) {
                        Some((a, b)) if verify_pair(d, &tables.intersect, union, u, v, a, b) => ExactEntry::Two(a, b),
                        Some(_) => {
                            rejected += 1;
                            ExactEntry::NotThisCount
                        }
                        None => ExactEntry::NotThisCount,
                    }
                })
                .collect();
            (row, rejected)
        })
        .collect();
    let rejected = unique.rejected + rows.iter().map(|r| r.1).sum::<usize>();
    let entries = rows.into_iter().flat_map(|r| r.0).collect();
    Ok(Attempt { entries, rejected })
}

/// Seeds for successive fingerprint draws.
fn seed_stream(seed: u64) -> impl FnMut(usize, usize) -> Fingerprint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |n, _attempt| Fingerprint::sample(n, rng.gen())
}

fn run_las_vegas(
    g: &Dag,
    target: usize,
    mut draw: impl FnMut(usize, usize) -> Fingerprint,
    max_resamples: usize,
) -> Result<ExactReport> {
    let tables = SizeTables::new(g, target == 2);
    let mut rejected_total = 0;
    for attempt in 0..=max_resamples {
        let f = draw(g.n(), attempt);
        let result = match target {
            1 => attempt_exact1(&tables, &f)?.0,
            _ => attempt_exact2(&tables, &f)?,
        };
        rejected_total += result.rejected;
        if result.rejected == 0 {
            return Ok(ExactReport {
                n: g.n(),
                target,
                entries: result.entries,
                attempts: attempt + 1,
                rejected_matches: rejected_total,
            });
        }
    }
    Err(Error::RetryLimitExceeded {
        attempts: max_resamples + 1,
    })
}

/// Finds every pair with exactly one LCA, and that LCA.
pub fn exact1_lca(g: &Dag, seed: u64) -> Result<ExactReport> {
    run_las_vegas(g, 1, seed_stream(seed), MAX_RESAMPLES)
}

/// Finds every pair with exactly two LCAs, and both of them.
pub fn exact2_lca(g: &Dag, seed: u64) -> Result<ExactReport> {
    run_las_vegas(g, 2, seed_stream(seed), MAX_RESAMPLES)
}

/// [`exact1_lca`] with caller-supplied fingerprints; `draw(n, attempt)` is
/// called once per attempt.
pub fn exact1_lca_with(
    g: &Dag,
    draw: impl FnMut(usize, usize) -> Fingerprint,
    max_resamples: usize,
) -> Result<ExactReport> {
    run_las_vegas(g, 1, draw, max_resamples)
}

/// [`exact2_lca`] with caller-supplied fingerprints.
pub fn exact2_lca_with(
    g: &Dag,
    draw: impl FnMut(usize, usize) -> Fingerprint,
    max_resamples: usize,
) -> Result<ExactReport> {
    run_las_vegas(g, 2, draw, max_resamples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::{random_dag, transitive_closure};
    use crate::matrix::count_product;
    use crate::oracle::{count_lcas, k_lcas_bruteforce};

    fn size_tables(g: &Dag) -> (BoolMatrix, IntMatrix, IntMatrix) {
        let d = transitive_closure(g);
        let n = g.n();
        let inter = count_product(&d.transpose(), &d).unwrap();
        let m = d.complement();
        let outside = count_product(&m.transpose(), &m).unwrap();
        let union = IntMatrix::from_vec(n, n, outside.as_slice().iter().map(|&c| n as u64 - c).collect());
        (d, inter, union)
    }

    #[test]
    fn verify_unique_examples() {
        let (d, inter, _) = size_tables(&diamond());
        assert!(verify_unique(&d, &inter, 1, 2, 0));
        let (d, inter, _) = size_tables(&butterfly());
        assert!(!verify_unique(&d, &inter, 2, 3, 0));
        let (d, inter, _) = size_tables(&chain3());
        assert_eq!(inter.get(1, 2), 2);
        assert!(!verify_unique(&d, &inter, 1, 2, 0));
        assert!(verify_unique(&d, &inter, 1, 2, 1));
    }

    #[test]
    fn verify_pair_examples() {
        let (d, inter, union) = size_tables(&butterfly());
        assert!(verify_pair(&d, &inter, &union, 2, 3, 0, 1));
        assert!(!verify_pair(&d, &inter, &union, 2, 3, 0, 0));
        let (d, inter, union) = size_tables(&diamond());
        assert!(!verify_pair(&d, &inter, &union, 1, 2, 0, 3));
    }

    /// Every upper-triangular DAG on `n` vertices; every DAG is isomorphic to one.
    fn all_dags(n: usize) -> impl Iterator<Item = Dag> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            Dag::new(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap()
        })
    }

    #[test]
    fn verify_pair_sound_on_all_small_dags() {
        let mut checked = 0;
        for n in 1..=5 {
            for g in all_dags(n) {
                let (d, inter, union) = size_tables(&g);
                let lists = k_lcas_bruteforce(&g, n);
                for u in 0..n {
                    for v in 0..n {
                        let mut truth = lists.list(u, v).to_vec();
                        truth.sort();
                        for w in 0..n {
                            assert_eq!(verify_unique(&d, &inter, u, v, w), truth == [w]);
                        }
                        for a in 0..n {
                            for b in 0..n {
                                let ok = verify_pair(&d, &inter, &union, u, v, a, b);
                                let expected = truth.len() == 2
                                    && ((truth[0], truth[1]) == (a, b) || (truth[1], truth[0]) == (a, b));
                                assert_eq!(ok, expected, "n={n} {:?} u={u} v={v} a={a} b={b}", g.edges());
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 600_000);
    }

    #[test]
    fn exact_examples() {
        let r = exact1_lca(&diamond(), 1).unwrap();
        assert_eq!(r.get(1, 2), ExactEntry::One(0));
        assert_eq!(r.get(3, 3), ExactEntry::One(3));
        assert_eq!(r.get(1, 3), ExactEntry::One(1));
        assert_eq!(exact1_lca(&butterfly(), 1).unwrap().get(2, 3), ExactEntry::NotThisCount);

        let r = exact2_lca(&butterfly(), 5).unwrap();
        assert_eq!(r.get(2, 3), ExactEntry::Two(0, 1));
        assert_eq!(r.get(3, 2), ExactEntry::Two(0, 1));
        assert_eq!(r.get(0, 1), ExactEntry::NotThisCount);
        assert_eq!(exact2_lca(&diamond(), 5).unwrap().get(1, 2), ExactEntry::NotThisCount);
        assert_eq!(exact1_lca(&Dag::empty(0), 0).unwrap().n(), 0);
    }

    fn check_against_oracle(g: &Dag, seed: u64) {
        let counts = count_lcas(g);
        let lists = k_lcas_bruteforce(g, g.n());
        let one = exact1_lca(g, seed).unwrap();
        let two = exact2_lca(g, seed).unwrap();
        assert_eq!(one.rejected_matches, 0);
        assert_eq!(two.rejected_matches, 0);
        for u in 0..g.n() {
            for v in 0..g.n() {
                let mut truth = lists.list(u, v).to_vec();
                truth.sort();
                let c = counts.count(u, v);
                assert_eq!(
                    one.get(u, v),
                    if c == 1 {
                        ExactEntry::One(truth[0])
                    } else {
                        ExactEntry::NotThisCount
                    }
                );
                assert_eq!(
                    two.get(u, v),
                    if c == 2 {
                        ExactEntry::Two(truth[0], truth[1])
                    } else {
                        ExactEntry::NotThisCount
                    }
                );
            }
        }
    }

    #[test]
    fn random_seed_7_and_11() {
        check_against_oracle(&random_dag(64, 0.1, 7).unwrap(), 7);
        check_against_oracle(&random_dag(64, 0.15, 11).unwrap(), 11);
    }

    #[test]
    fn degenerate_fingerprint_exhausts_retries() {
        // all-zero f makes every pair collide with every ancestor set
        let g = butterfly();
        let zero = |n: usize, _| Fingerprint::from_values(MERSENNE_61, vec![0; n]);
        let err = exact1_lca_with(&g, zero, 3).unwrap_err();
        assert!(matches!(err, Error::RetryLimitExceeded { attempts: 4 }));
        assert!(matches!(
            exact2_lca_with(&g, zero, 0),
            Err(Error::RetryLimitExceeded { attempts: 1 })
        ));
    }

    #[test]
    fn las_vegas_recovers_after_bad_sample() {
        let g = random_dag(20, 0.2, 3).unwrap();
        let draw = |n: usize, attempt: usize| {
            if attempt < 2 {
                Fingerprint::from_values(MERSENNE_61, vec![0; n])
            } else {
                Fingerprint::sample(n, 99)
            }
        };
        let r = exact2_lca_with(&g, draw, MAX_RESAMPLES).unwrap();
        assert_eq!(r.attempts, 3);
        assert!(r.rejected_matches > 0);
        assert_eq!(
            r,
            ExactReport {
                attempts: 3,
                rejected_matches: r.rejected_matches,
                ..exact2_lca(&g, 1).unwrap()
            }
        );
    }

    use crate::matrix::MERSENNE_61;
}
