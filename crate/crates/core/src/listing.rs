//! Listing the topologically latest LCAs of every pair.
//!
//! Blocks always partition topological *positions*: block `i` holds the
//! vertices at positions `i*L .. min((i+1)*L, n)`. Since every ancestor of a
//! vertex precedes it, the suffix starting at a block is closed under taking
//! ancestors of its members, so the LCAs of `(u, v)` inside the suffix
//! subgraph are exactly `LCA(u, v)` restricted to the suffix.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{exact1_lca, exact2_lca};
use crate::graph::{suffix_subgraph, Dag, Reachability};
use crate::matrix::{count_product_transposed, intersects, set_bit, test_bit, words_for, BoolMatrix, IntMatrix};
use crate::oracle::{count_lcas_with, LcaReport};
use crate::witness::{default_block_size, max_witness_direct};

/// Partition of positions `0..n` into consecutive runs of `block` (the last
/// run may be shorter).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockScheme {
    n: usize,
    block: usize,
}

impl BlockScheme {
    pub fn new(n: usize, block: usize) -> Result<Self> {
        if block == 0 || (n > 0 && block > n) {
            return Err(Error::InvalidBlockSize { block, n });
        }
        Ok(BlockScheme { n, block })
    }

    /// Block size `ceil(sqrt(n))`.
    pub fn with_default_size(n: usize) -> Self {
        BlockScheme {
            n,
            block: default_block_size(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn count(&self) -> usize {
        self.n.div_ceil(self.block)
    }

    pub fn range(&self, i: usize) -> Range<usize> {
        i * self.block..((i + 1) * self.block).min(self.n)
    }

    pub fn block_of(&self, pos: usize) -> usize {
        pos / self.block
    }
}

/// Per-pair latest common ancestor, by Max-Witness over the closure with the
/// inner index in topological order: `A[u,k] = [π(k) ∈ Anc(u)]`,
/// `B[k,v] = [π(k) ∈ Anc(v)]`.
pub(crate) fn latest_lca_with(reach: &Reachability) -> Vec<Option<usize>> {
    let n = reach.n();
    let pi = reach.order().pi();
    let ident: Vec<usize> = (0..n).collect();
    let a = reach.ancestor_rows().permuted(&ident, pi);
    let b = reach.closure().permuted(pi, &ident);
    let c = max_witness_direct(&a, &b, default_block_size(n)).expect("square operands");
    c.entries().iter().map(|k| k.map(|k| pi[k])).collect()
}

/// The topologically latest LCA of every pair (a list of length 0 or 1).
///
/// The latest common ancestor has no common ancestor among its proper
/// descendants, which all come later, so it is an LCA.
pub fn latest_lca(g: &Dag) -> LcaReport {
    let latest = latest_lca_with(&Reachability::new(g));
    LcaReport::Lists {
        n: g.n(),
        lists: latest.into_iter().map(|w| w.into_iter().collect()).collect(),
    }
}

fn has_common_ancestor(reach: &Reachability) -> BoolMatrix {
    let anc = reach.ancestor_rows();
    let n = reach.n();
    BoolMatrix::from_fn(n, n, |u, v| intersects(anc.row(u), anc.row(v)))
}

/// `bits[u,v] = [|LCA(u, v)| >= k]`.
///
/// `k <= 3` is answered from exact-count detection:
/// `[ℓ >= k+1] = [ℓ >= 1] ∧ ¬[ℓ = 1] ∧ … ∧ ¬[ℓ = k]`. Larger `k` falls back
/// to brute-force counting. `seed` drives the fingerprints of the
/// randomized (Las Vegas) detectors; the output does not depend on it.
pub fn atleast_k(g: &Dag, k: usize, seed: u64) -> Result<BoolMatrix> {
    let n = g.n();
    if k == 0 {
        return Ok(BoolMatrix::ones(n, n));
    }
    let reach = Reachability::new(g);
    let some = has_common_ancestor(&reach);
    match k {
        1 => Ok(some),
        2 => Ok(some.and(&exact1_lca(g, seed)?.to_bits().complement())),
        3 => {
            let not_one = exact1_lca(g, seed)?.to_bits().complement();
            let not_two = exact2_lca(g, seed)?.to_bits().complement();
            Ok(some.and(&not_one).and(&not_two))
        }
        _ => {
            let counts = count_lcas_with(&reach);
            Ok(BoolMatrix::from_fn(n, n, |u, v| counts.count(u, v) >= k as u64))
        }
    }
}

/// `[|LCA(u, v)| <= k] = ¬[|LCA(u, v)| >= k+1]`.
pub fn atmost_k(g: &Dag, k: usize, seed: u64) -> Result<BoolMatrix> {
    Ok(atleast_k(g, k + 1, seed)?.complement())
}

/// `[|LCA(u, v)| = k] = [ℓ <= k] ⊕ [ℓ <= k-1]`, and `[ℓ = 0] = ¬[ℓ >= 1]`.
pub fn exact_k(g: &Dag, k: usize, seed: u64) -> Result<BoolMatrix> {
    if k == 0 {
        return atmost_k(g, 0, seed);
    }
    Ok(atmost_k(g, k, seed)?.xor(&atmost_k(g, k - 1, seed)?))
}

/// Per-pair partial LCA lists and the packed set of listed vertices.
struct Listing {
    n: usize,
    stride: usize,
    lists: Vec<Vec<usize>>,
    listed: Vec<u64>,
}

impl Listing {
    fn new(n: usize) -> Self {
        let stride = words_for(n);
        Listing {
            n,
            stride,
            lists: vec![Vec::new(); n * n],
            listed: vec![0; n * n * stride],
        }
    }

    /// For every pair with a target block, appends the latest vertex of that
    /// block that is a common ancestor and reaches no listed LCA.
    fn scan(&mut self, reach: &Reachability, scheme: &BlockScheme, target: &[Option<usize>]) {
        let (n, stride) = (self.n, self.stride);
        if n == 0 {
            return;
        }
        let anc = reach.ancestor_rows();
        let desc = reach.closure();
        let pi = reach.order().pi();
        self.lists
            .par_chunks_mut(n)
            .zip(self.listed.par_chunks_mut(n * stride))
            .enumerate()
            .for_each(|(u, (lists, listed))| {
                for v in 0..n {
                    let Some(blk) = target[u * n + v] else {
                        continue;
                    };
                    let seen = &mut listed[v * stride..(v + 1) * stride];
                    let next = scheme.range(blk).rev().map(|p| pi[p]).find(|&x| {
                        test_bit(anc.row(u), x) && test_bit(anc.row(v), x) && !intersects(desc.row(x), seen)
                    });
                    debug_assert!(next.is_some(), "no new LCA in block {blk} for ({u}, {v})");
                    if let Some(x) = next {
                        set_bit(seen, x);
                        lists[v].push(x);
                    }
                }
            });
    }

    fn into_report(self) -> LcaReport {
        LcaReport::Lists {
            n: self.n,
            lists: self.lists,
        }
    }
}

/// Up to `k` topologically latest LCAs of every pair, from any AtLeast-ℓ
/// detector.
///
/// `detector(h, ℓ)` must return `[|LCA_h(u, v)| >= ℓ]` for the given graph
/// `h`; it is only ever called on induced suffix subgraphs. For
/// `ℓ = 1..=k`, the detector runs on the suffixes from the latest block
/// down; the first suffix on which it fires for `(u, v)` starts at the block
/// holding the `ℓ`-th latest LCA, which is then found by scanning that block.
/// Pairs with fewer than `ℓ` LCAs never fire and keep their shorter list.
pub fn list_k_lcas<D>(g: &Dag, k: usize, mut detector: D, block: usize) -> Result<LcaReport>
where
    D: FnMut(&Dag, usize) -> Result<BoolMatrix>,
{
    let n = g.n();
    let scheme = BlockScheme::new(n, block)?;
    let reach = Reachability::new(g);
    let order = reach.order();
    let suffixes = (0..scheme.count())
        .map(|i| {
            let start = scheme.range(i).start;
            suffix_subgraph(g, order, start).map(|(h, _)| (start, h))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut listing = Listing::new(n);
    for level in 1..=k {
        let mut target: Vec<Option<usize>> = vec![None; n * n];
        let mut fired = false;
        for (i, (start, h)) in suffixes.iter().enumerate().rev() {
            let bits = detector(h, level)?;
            if bits.rows() != h.n() || bits.cols() != h.n() {
                return Err(Error::DimensionMismatch(format!(
                    "detector returned {}x{} bits for {} vertices",
                    bits.rows(),
                    bits.cols(),
                    h.n()
                )));
            }
            for a in 0..h.n() {
                let u = order.vertex(start + a);
                for b in bits.row_ones(a) {
                    let v = order.vertex(start + b);
                    let slot = &mut target[u * n + v];
                    if slot.is_none() && listing.lists[u * n + v].len() == level - 1 {
                        *slot = Some(i);
                        fired = true;
                    }
                }
            }
        }
        if !fired {
            break;
        }
        listing.scan(&reach, &scheme, &target);
    }
    Ok(listing.into_report())
}

/// [`list_k_lcas`] wired to the [`atleast_k`] detectors.
pub fn list_k_lcas_default(g: &Dag, k: usize, seed: u64) -> Result<LcaReport> {
    let block = default_block_size(g.n());
    list_k_lcas(g, k, |h, level| atleast_k(h, level, seed), block)
}

/// The two latest LCAs of every pair (or all, if fewer).
///
/// With `ℓ1` the latest LCA, a block `V_i` later than the one holding the
/// second LCA satisfies `|Anc(u) ∩ Anc(v) ∩ V_i| = |Anc(ℓ1) ∩ V_i|`, and the
/// block holding `ℓ2` violates it. Left sides come from one counting product
/// per block, right sides from per-vertex block counts.
pub fn ap2_lca(g: &Dag, block: usize) -> Result<LcaReport> {
    ap_lca(g, block, 2)
}

/// The three latest LCAs of every pair (or all, if fewer).
///
/// As [`ap2_lca`], and once `ℓ2` is known the third LCA's block is the latest
/// violating `|Anc(u) ∩ Anc(v) ∩ V_i| = |(Anc(ℓ1) ∪ Anc(ℓ2)) ∩ V_i|`. The
/// right side is `|Anc(ℓ1) ∩ V_i| + |Anc(ℓ2) ∩ V_i| - |Anc(ℓ1) ∩ Anc(ℓ2) ∩ V_i|`,
/// read off the same per-block product.
pub fn ap3_lca(g: &Dag, block: usize) -> Result<LcaReport> {
    ap_lca(g, block, 3)
}

fn ap_lca(g: &Dag, block: usize, k: usize) -> Result<LcaReport> {
    let n = g.n();
    let scheme = BlockScheme::new(n, block)?;
    let reach = Reachability::new(g);
    let pi = reach.order().pi();
    let ident: Vec<usize> = (0..n).collect();
    // ancestor sets indexed by position
    let anc_by_pos = reach.ancestor_rows().permuted(&ident, pi);

    let mut listing = Listing::new(n);
    let first: Vec<Option<usize>> = latest_lca_with(&reach)
        .into_iter()
        .map(|w| w.map(|w| scheme.block_of(reach.order().position(w))))
        .collect();
    listing.scan(&reach, &scheme, &first);

    for i in (0..scheme.count()).rev() {
        let r = scheme.range(i);
        let cols = anc_by_pos.column_block(r.start, r.end);
        // cnt[x][y] = |Anc(x) ∩ Anc(y) ∩ V_i|; its diagonal is |Anc(x) ∩ V_i|
        let cnt: IntMatrix = count_product_transposed(&cols, &cols);
        let mut target = vec![None; n * n];
        for level in 2..=k {
            let mut any = false;
            target.fill(None);
            for u in 0..n {
                for v in 0..n {
                    let list = &listing.lists[u * n + v];
                    if list.len() != level - 1 {
                        continue;
                    }
                    let rhs = match level {
                        2 => cnt.get(list[0], list[0]),
                        _ => cnt.get(list[0], list[0]) + cnt.get(list[1], list[1]) - cnt.get(list[0], list[1]),
                    };
                    if cnt.get(u, v) != rhs {
                        target[u * n + v] = Some(i);
                        any = true;
                    }
                }
            }
            if any {
                listing.scan(&reach, &scheme, &target);
            }
        }
    }
    Ok(listing.into_report())
}
