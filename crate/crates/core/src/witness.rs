//! Max-Witness products: `C[i,j] = max {k : A[i,k] = B[k,j] = 1}`, or NONE
//! when no such `k` exists.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Dag, Reachability};
use crate::listing::latest_lca_with;
use crate::matrix::{ones, test_bit, words_for, BoolMatrix};
use crate::oracle::CandidateMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Option<usize>>,
}

impl WitnessMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Option<usize>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(WitnessMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Option<usize>>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[_]>::to_vec)
            .collect()
    }
}

fn check_product(a: &BoolMatrix, b: &BoolMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `ceil(sqrt(n))`, at least 1.
pub fn default_block_size(n: usize) -> usize {
    (n as f64).sqrt().ceil().max(1.0) as usize
}

/// Max-Witness by blocks of the inner index.
///
/// Blocks of `block` consecutive `k` are visited from the last one down. Per
/// row `i`, OR-ing the rows of `B` selected by `A[i,k]` within a block gives
/// the columns having a witness there; each column is assigned the first
/// (i.e. latest) block that flags it and then scanned downward inside that
/// block.
pub fn max_witness_direct(a: &BoolMatrix, b: &BoolMatrix, block: usize) -> Result<WitnessMatrix> {
    check_product(a, b)?;
    let inner = a.cols();
    if block == 0 || (inner > 0 && block > inner) {
        return Err(Error::InvalidBlockSize { block, n: inner });
    }
    let cols = b.cols();
    let stride = words_for(cols);
    let nblocks = inner.div_ceil(block);

    let rows: Vec<Vec<Option<usize>>> = (0..a.rows())
        .into_par_iter()
        .map(|i| {
            let ai = a.row(i);
            let mut out = vec![None; cols];
            let mut assigned = vec![0u64; stride];
            let mut flags = vec![0u64; stride];
            let mut remaining = cols;
            for blk in (0..nblocks).rev() {
                if remaining == 0 {
                    break;
                }
                let (start, end) = (blk * block, ((blk + 1) * block).min(inner));
                flags.fill(0);
                for k in start..end {
                    if test_bit(ai, k) {
                        for (f, &w) in flags.iter_mut().zip(b.row(k)) {
                            *f |= w;
                        }
                    }
                }
                for (f, s) in flags.iter_mut().zip(assigned.iter_mut()) {
                    *f &= !*s;
                    *s |= *f;
                }
                for j in ones(&flags) {
                    remaining -= 1;
                    out[j] = (start..end).rev().find(|&k| test_bit(ai, k) && b.get(k, j));
                    debug_assert!(out[j].is_some());
                }
            }
            out
        })
        .collect();
    WitnessMatrix::from_entries(a.rows(), cols, rows.concat())
}

/// Vertex layout of the phase graphs: `I`, then `J`, then the padded `K`,
/// then one `w_b` per bit prefix.
struct Layout {
    ni: usize,
    nj: usize,
    /// Padded inner size, a power of two.
    nk: usize,
    bits: u32,
}

impl Layout {
    fn i(&self, i: usize) -> usize {
        i
    }
    fn j(&self, j: usize) -> usize {
        self.ni + j
    }
    fn k(&self, k: usize) -> usize {
        self.ni + self.nj + k
    }
    fn w(&self, b: usize) -> usize {
        self.ni + self.nj + self.nk + b
    }
}

/// Max-Witness through an all-pairs LCA verifier.
///
/// The inner index is padded: position 0 is a guard that every row of `A`
/// and column of `B` hits, original `k` becomes `k + 1`, and never-hitting
/// dummies fill up to a power of two `2^ℓ`. In the base graph each `k`
/// points to the `i` with `A[i,k]` and to the `j` with `B[k,j]`, so `k` is a
/// common ancestor of `(i, j)` exactly when it is a witness.
///
/// Phase `t` adds a vertex `w_b` for every `(t-1)`-bit string `b`, with edges
/// to all of `I ∪ J` and to every `k` whose `ℓ`-bit code starts with `b‖1`.
/// If `b` is a prefix of the maximum witness of `(i, j)`, then `w_b` is an
/// LCA of `(i, j)` iff no witness starts with `b‖1`, so the verifier's answer
/// on the candidate `w_b` yields the next bit. Other pairs get their true
/// latest LCA as candidate. The verifier is called exactly `ℓ` times.
///
/// `verlca(g, cand)` must return an `|V| x |V|` matrix whose `[u,v]` bit is
/// set iff `cand[u,v]` is correct. Decoded witnesses are re-verified against
/// `A` and `B`; a mismatch is a `SolverContractViolation`.
pub fn max_witness_via_verlca(
    a: &BoolMatrix,
    b: &BoolMatrix,
    mut verlca: impl FnMut(&Dag, &CandidateMatrix) -> Result<BoolMatrix>,
) -> Result<WitnessMatrix> {
    check_product(a, b)?;
    let (ni, nj, inner) = (a.rows(), b.cols(), a.cols());
    let nk = (inner + 1).next_power_of_two();
    let lay = Layout {
        ni,
        nj,
        nk,
        bits: nk.trailing_zeros(),
    };

    let mut base = Vec::new();
    for i in 0..ni {
        base.push((lay.k(0), lay.i(i)));
        base.extend(a.row_ones(i).map(|k| (lay.k(k + 1), lay.i(i))));
    }
    for j in 0..nj {
        base.push((lay.k(0), lay.j(j)));
    }
    for k in 0..inner {
        base.extend(b.row_ones(k).map(|j| (lay.k(k + 1), lay.j(j))));
    }

    // prefix of the maximum padded witness found so far, per (i, j)
    let mut prefix = vec![0usize; ni * nj];
    for t in 1..=lay.bits {
        let nw = 1usize << (t - 1);
        let shift = lay.bits - t;
        let n = lay.w(nw);
        let mut edges = base.clone();
        for bw in 0..nw {
            let w = lay.w(bw);
            edges.extend((0..ni).map(|i| (w, lay.i(i))));
            edges.extend((0..nj).map(|j| (w, lay.j(j))));
            edges.extend((0..nk).filter(|&k| k >> shift == (bw << 1 | 1)).map(|k| (w, lay.k(k))));
        }
        let g = Dag::new(n, edges)?;

        let latest = latest_lca_with(&Reachability::new(&g));
        let mut cand = CandidateMatrix::from_entries(n, latest)?;
        for i in 0..ni {
            for j in 0..nj {
                let w = Some(lay.w(prefix[i * nj + j]));
                cand.set(lay.i(i), lay.j(j), w);
                cand.set(lay.j(j), lay.i(i), w);
            }
        }

        let bits = verlca(&g, &cand)?;
        if bits.rows() != n || bits.cols() != n {
            return Err(Error::SolverContractViolation(format!(
                "verifier returned {}x{} bits for {n} vertices",
                bits.rows(),
                bits.cols()
            )));
        }
        for i in 0..ni {
            for j in 0..nj {
                let c = &mut prefix[i * nj + j];
                *c = *c << 1 | !bits.get(lay.i(i), lay.j(j)) as usize;
            }
        }
    }

    let mut entries = Vec::with_capacity(ni * nj);
    for i in 0..ni {
        for j in 0..nj {
            let c = prefix[i * nj + j];
            let valid = c == 0 || (c <= inner && a.get(i, c - 1) && b.get(c - 1, j));
            if !valid {
                return Err(Error::SolverContractViolation(format!(
                    "decoded witness {} for ({i}, {j}) is not a witness",
                    c - 1
                )));
            }
            entries.push(c.checked_sub(1));
        }
    }
    let c = WitnessMatrix::from_entries(ni, nj, entries)?;
    if !is_max_witness(a, b, &c) {
        return Err(Error::SolverContractViolation(
            "verifier answers disagree with re-verification: a decoded witness is not maximal".into(),
        ));
    }
    Ok(c)
}

/// Checks `C` entrywise against the definition: every reported `k` is a
/// witness, no later `k` is, and NONE only where no witness exists.
pub fn is_max_witness(a: &BoolMatrix, b: &BoolMatrix, c: &WitnessMatrix) -> bool {
    if a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols() {
        return false;
    }
    let bt = b.transpose();
    (0..a.rows()).all(|i| {
        (0..b.cols()).all(|j| {
            let both: Vec<u64> = a.row(i).iter().zip(bt.row(j)).map(|(x, y)| x & y).collect();
            ones(&both).last() == c.get(i, j)
        })
    })
}
