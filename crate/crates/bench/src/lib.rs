//! Seeded instances shared by the benchmarks.

use daglca_core::{random_bool_matrix, random_dag, BoolMatrix, Dag};

pub const SEED: u64 = 0x5eed;

/// Random DAG with about `degree` out-edges per vertex.
pub fn dag(n: usize, degree: f64) -> Dag {
    let p = if n > 1 { (degree / (n - 1) as f64).min(1.0) } else { 0.0 };
    random_dag(n, p, SEED).expect("probability in range")
}

pub fn matrix_pair(n: usize, p: f64) -> (BoolMatrix, BoolMatrix) {
    (
        random_bool_matrix(n, n, p, SEED).expect("probability in range"),
        random_bool_matrix(n, n, p, SEED + 1).expect("probability in range"),
    )
}
