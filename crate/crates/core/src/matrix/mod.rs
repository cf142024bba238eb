//! Packed boolean and small-integer matrix kernels.
//!
//! Every product here is a word-parallel cubic kernel: boolean products OR
//! whole rows together, counting products AND rows of the left operand with
//! rows of the transposed right operand and popcount the result. Output rows
//! are computed in parallel; results never depend on the thread count.

mod bool;
mod fingerprint;
mod int;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) use self::bool::words_for;
pub use self::bool::{and_count, intersects, ones, set_bit, test_bit, BoolMatrix, Ones};
pub use fingerprint::{Fingerprint, MERSENNE_61};
pub use int::IntMatrix;

use crate::error::{Error, Result};

fn check_inner(a: &BoolMatrix, b: &BoolMatrix) -> Result<()> {
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

/// Boolean product: `C[i,j] = OR_k A[i,k] AND B[k,j]`.
pub fn bool_product(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    check_inner(a, b)?;
    let stride = b.stride();
    let rows: Vec<Vec<u64>> = (0..a.rows())
        .into_par_iter()
        .map(|i| {
            let mut acc = vec![0u64; stride];
            for k in a.row_ones(i) {
                for (c, &w) in acc.iter_mut().zip(b.row(k)) {
                    *c |= w;
                }
            }
            acc
        })
        .collect();
    Ok(BoolMatrix::from_words(a.rows(), b.cols(), rows.concat()))
}

/// Counting product: `C[i,j] = |{k : A[i,k] = B[k,j] = 1}|`.
pub fn count_product(a: &BoolMatrix, b: &BoolMatrix) -> Result<IntMatrix> {
    check_inner(a, b)?;
    let bt = b.transpose();
    Ok(count_product_transposed(a, &bt))
}

/// `C[i,j] = popcount(A[i] & Bt[j])`, with the right operand given by rows.
pub(crate) fn count_product_transposed(a: &BoolMatrix, bt: &BoolMatrix) -> IntMatrix {
    debug_assert_eq!(a.cols(), bt.cols());
    let cols = bt.rows();
    let data: Vec<u64> = (0..a.rows())
        .into_par_iter()
        .flat_map_iter(|i| {
            let ai = a.row(i);
            (0..cols).map(move |j| and_count(ai, bt.row(j)) as u64)
        })
        .collect();
    IntMatrix::from_vec(a.rows(), cols, data)
}

/// `C[u,v] = sum_x A[x,u] * A[x,v] * f(x) mod p`, i.e. `A^T B` with
/// `B[x,v] = f(x) * A[x,v]`.
///
/// When `A` is a transitive closure, `C[u,v] = f(Anc(u) ∩ Anc(v))`.
///
/// The weights are bit-sliced: for each bit `b` of the residues the kernel
/// popcounts `A[.,u] & A[.,v] & {x : bit b of f(x) set}` word by word, so the
/// inner loop stays on packed words. Partial sums fit in `u128`.
pub fn weighted_modp_product(a: &BoolMatrix, weights: &Fingerprint) -> Result<IntMatrix> {
    if a.rows() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weight rows for a {}x{} matrix",
            weights.len(),
            a.rows(),
            a.cols()
        )));
    }
    let p = weights.p();
    let at = a.transpose();
    let n = a.cols();
    let stride = at.stride();
    let nbits = 64 - (p - 1).leading_zeros() as usize;

    let mut slices = vec![vec![0u64; stride]; nbits];
    for (x, &fx) in weights.values().iter().enumerate() {
        for (b, slice) in slices.iter_mut().enumerate() {
            if fx >> b & 1 == 1 {
                set_bit(slice, x);
            }
        }
    }

    let upper: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let au = at.row(u);
            (u..n)
                .map(|v| {
                    let av = at.row(v);
                    let mut acc: u128 = 0;
                    for w in 0..stride {
                        let both = au[w] & av[w];
                        if both == 0 {
                            continue;
                        }
                        for (b, slice) in slices.iter().enumerate() {
                            acc += ((both & slice[w]).count_ones() as u128) << b;
                        }
                    }
                    (acc % p as u128) as u64
                })
                .collect()
        })
        .collect();

    let mut out = IntMatrix::zeros(n, n);
    for (u, row) in upper.iter().enumerate() {
        for (off, &val) in row.iter().enumerate() {
            out.set(u, u + off, val);
            out.set(u + off, u, val);
        }
    }
    Ok(out.with_modulus(p))
}

/// Random `rows x cols` matrix, each bit set with probability `p`.
pub fn random_bool_matrix(rows: usize, cols: usize, p: f64, seed: u64) -> Result<BoolMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("bit probability {p} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(BoolMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(p)))
}
