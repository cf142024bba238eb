use std::fmt::Write as _;
use std::time::Instant;

use daglca_core::{random_bool_matrix, random_dag};

use crate::args::{Algorithm, BenchArgs};
use crate::error::{CliError, Result};
use crate::output::emit;
use crate::run::{run_on_dag, run_on_matrices};

fn median_ms(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let m = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2.0
    }
}

/// Median wall time per size on instances drawn from `seed`.
pub fn bench(args: BenchArgs) -> Result<()> {
    use Algorithm::*;
    if args.repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    if matches!(
        args.alg,
        Verify | SolveHyperclique | Solve4clique | Solve4hypercliqueVerlca
    ) {
        return Err(CliError::Usage(format!("--alg {} is not benchmarked", args.alg.name())));
    }
    let mut csv = String::from("alg,n,repeats,median_ms\n");
    for &n in &args.sizes {
        let mut samples = Vec::with_capacity(args.repeats);
        match args.alg {
            MaxWitness | MaxWitnessViaVerlca => {
                let a = random_bool_matrix(n, n, args.p, args.seed)?;
                let b = random_bool_matrix(n, n, args.p, args.seed ^ 0x5555_5555)?;
                for _ in 0..args.repeats {
                    let t = Instant::now();
                    std::hint::black_box(run_on_matrices(args.alg, &a, &b, None)?);
                    samples.push(t.elapsed().as_secs_f64() * 1e3);
                }
            }
            alg => {
                let g = random_dag(n, args.p, args.seed)?;
                for _ in 0..args.repeats {
                    let t = Instant::now();
                    std::hint::black_box(run_on_dag(alg, &g, args.k, args.seed, None)?);
                    samples.push(t.elapsed().as_secs_f64() * 1e3);
                }
            }
        }
        let _ = writeln!(
            csv,
            "{},{n},{},{:.3}",
            args.alg.name(),
            args.repeats,
            median_ms(samples)
        );
    }
    emit(args.out.as_deref(), &csv)
}
