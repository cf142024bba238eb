use std::path::PathBuf;

use rayon::prelude::*;

use daglca_core::io::{write_bool_matrix, write_dag_json, write_four_partite, write_hypergraph};
use daglca_core::reductions::{
    brute_4clique, brute_hyperclique, default_group_names, random_four_partite, random_partite_hypergraph,
    required_groups, solve_4clique_via_countlca, solve_4hyperclique_via_verlca, solve_hyperclique_via_eqlca,
};
use daglca_core::{k_lcas_bruteforce, random_bool_matrix, random_dag, BoolMatrix, Dag, ExactEntry, LcaReport};

use crate::args::{Algorithm, CheckArgs, Oracle};
use crate::error::{CliError, Result};
use crate::output::emit;
use crate::run::{run_on_dag, run_on_matrices, Outcome};

/// A failing trial: what differed and the instance files to dump.
struct Counterexample {
    trial: usize,
    message: String,
    files: Vec<(&'static str, String)>,
}

type Trial = std::result::Result<(), Counterexample>;

fn density(args: &CheckArgs, t: usize, cycle: [f64; 3]) -> f64 {
    args.p.unwrap_or(cycle[t % 3])
}

fn incompatible(args: &CheckArgs) -> CliError {
    CliError::Usage(format!(
        "--alg {} cannot be checked against {}",
        args.alg.name(),
        args.oracle.name()
    ))
}

pub fn check(args: CheckArgs) -> Result<bool> {
    use Algorithm::*;
    let family = match args.alg {
        MaxWitness | MaxWitnessViaVerlca => Oracle::NaiveWitness,
        SolveHyperclique | Solve4hypercliqueVerlca => Oracle::BruteHyperclique,
        Solve4clique => Oracle::Brute4clique,
        Closure | Verify | AddOneLca => {
            return Err(CliError::Usage(format!(
                "--alg {} has no oracle comparison",
                args.alg.name()
            )))
        }
        _ => Oracle::KLcaBrute,
    };
    let compatible = match family {
        Oracle::KLcaBrute => matches!(args.oracle, Oracle::CountLca | Oracle::KLcaBrute),
        f => f == args.oracle,
    };
    if !compatible {
        return Err(incompatible(&args));
    }
    if args.alg == SolveHyperclique {
        let k = args.k.unwrap_or(3);
        if required_groups(k).is_none() {
            return Err(CliError::Usage(format!(
                "--k {k} has no hyperclique gadget (use 3 to 6)"
            )));
        }
    }

    let run_trial = |t: usize| -> Result<Trial> {
        let seed = args.seed.wrapping_add(t as u64);
        match family {
            Oracle::NaiveWitness => witness_trial(&args, t, seed),
            Oracle::BruteHyperclique => hyperclique_trial(&args, t, seed),
            Oracle::Brute4clique => four_clique_trial(&args, t, seed),
            _ => dag_trial(&args, t, seed),
        }
    };
    let first = (0..args.trials)
        .into_par_iter()
        .map(run_trial)
        .find_map_first(|r| match r {
            Ok(Ok(())) => None,
            Ok(Err(cx)) => Some(Ok(cx)),
            Err(e) => Some(Err(e)),
        });

    match first {
        None => {
            println!(
                "PASS {} vs {}: {} trials",
                args.alg.name(),
                args.oracle.name(),
                args.trials
            );
            Ok(true)
        }
        Some(Err(e)) => Err(e),
        Some(Ok(cx)) => {
            let mut written = Vec::new();
            for (ext, text) in &cx.files {
                let path = dump_path(&args.dump, ext);
                emit(Some(&path), text)?;
                written.push(path.display().to_string());
            }
            println!(
                "FAIL {} vs {}: trial {} (seed {}): {}; instance written to {}",
                args.alg.name(),
                args.oracle.name(),
                cx.trial,
                args.seed.wrapping_add(cx.trial as u64),
                cx.message,
                written.join(", ")
            );
            Ok(false)
        }
    }
}

fn dump_path(base: &std::path::Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// The per-pair value an algorithm reports, in a form the brute-force
/// lists can reproduce.
fn projected(o: &Outcome, u: usize, v: usize) -> Vec<usize> {
    match o {
        Outcome::Lca(r @ LcaReport::Counts(_)) => vec![r.count(u, v) as usize],
        Outcome::Lca(r) => r.list(u, v).to_vec(),
        Outcome::Bits { bits, .. } => vec![bits.get(u, v) as usize],
        Outcome::Exact(r) => match r.get(u, v) {
            ExactEntry::NotThisCount => vec![],
            e => {
                let mut s = e.vertices();
                s.sort_unstable();
                s
            }
        },
        _ => unreachable!("DAG algorithms only"),
    }
}

fn expected(alg: Algorithm, k: Option<usize>, all: &[usize]) -> Vec<usize> {
    use Algorithm::*;
    let first = |m: usize| all[..all.len().min(m)].to_vec();
    let len = all.len();
    let k = k.unwrap_or(0);
    match alg {
        CountLca => vec![len],
        AllLca => all.to_vec(),
        LatestLca => first(1),
        Ap2 => first(2),
        Ap3 => first(3),
        KLcaBrute | ListK => first(k),
        ExactK => vec![(len == k) as usize],
        AtleastK => vec![(len >= k) as usize],
        AtmostK => vec![(len <= k) as usize],
        Exact1 | Exact2 => {
            let target = if alg == Exact1 { 1 } else { 2 };
            if len == target {
                let mut s = all.to_vec();
                s.sort_unstable();
                s
            } else {
                vec![]
            }
        }
        _ => unreachable!("DAG algorithms only"),
    }
}

fn dag_trial(args: &CheckArgs, t: usize, seed: u64) -> Result<Trial> {
    let g: Dag = random_dag(args.n, density(args, t, [0.05, 0.1, 0.3]), seed)?;
    let got = run_on_dag(args.alg, &g, args.k, seed, args.block)?;
    let lists = k_lcas_bruteforce(&g, g.n());
    for u in 0..g.n() {
        for v in 0..g.n() {
            let (a, b) = (projected(&got, u, v), expected(args.alg, args.k, lists.list(u, v)));
            if a != b {
                return Ok(Err(Counterexample {
                    trial: t,
                    message: format!("pair ({u},{v}): got {a:?}, oracle {b:?}"),
                    files: vec![("json", write_dag_json(&g))],
                }));
            }
        }
    }
    Ok(Ok(()))
}

fn witness_trial(args: &CheckArgs, t: usize, seed: u64) -> Result<Trial> {
    let p = density(args, t, [0.05, 0.1, 0.3]);
    let a: BoolMatrix = random_bool_matrix(args.n, args.n, p, seed)?;
    let b = random_bool_matrix(args.n, args.n, p, seed ^ 0x5555_5555)?;
    let Outcome::Witness(c) = run_on_matrices(args.alg, &a, &b, args.block)? else {
        unreachable!("matrix algorithms produce witnesses")
    };
    for i in 0..args.n {
        for j in 0..args.n {
            let want = (0..args.n).rev().find(|&k| a.get(i, k) && b.get(k, j));
            if c.get(i, j) != want {
                return Ok(Err(Counterexample {
                    trial: t,
                    message: format!("entry ({i},{j}): got {:?}, oracle {want:?}", c.get(i, j)),
                    files: vec![("A.bm", write_bool_matrix(&a)), ("B.bm", write_bool_matrix(&b))],
                }));
            }
        }
    }
    Ok(Ok(()))
}

fn hyperclique_trial(args: &CheckArgs, t: usize, seed: u64) -> Result<Trial> {
    let k = if args.alg == Algorithm::SolveHyperclique {
        args.k.unwrap_or(3)
    } else {
        4
    };
    let names = match args.alg {
        Algorithm::SolveHyperclique => required_groups(k)
            .expect("validated")
            .iter()
            .map(|s| s.to_string())
            .collect(),
        _ => default_group_names(4),
    };
    let sizes = match (&args.parts, k, args.alg) {
        (Some(p), _, _) => p.clone(),
        (None, _, Algorithm::Solve4hypercliqueVerlca) | (None, 3, _) => vec![4, 4, 4, 16],
        (None, 4, _) => vec![4, 2, 2, 2, 16],
        (None, 5, _) => vec![2, 2, 2, 2, 2, 8],
        (None, _, _) => vec![3, 3, 3, 3, 9],
    };
    if sizes.len() != names.len() {
        return Err(CliError::Usage(format!(
            "--parts needs {} sizes, got {}",
            names.len(),
            sizes.len()
        )));
    }
    let groups: Vec<(&str, usize)> = names.iter().map(String::as_str).zip(sizes).collect();
    let h = random_partite_hypergraph(&groups, density(args, t, [0.3, 0.6, 0.9]), seed)?;
    let got = match args.alg {
        Algorithm::SolveHyperclique => solve_hyperclique_via_eqlca(&h, k)?,
        _ => solve_4hyperclique_via_verlca(&h)?,
    };
    let want = brute_hyperclique(&h, groups.len());
    Ok(if got == want {
        Ok(())
    } else {
        Err(Counterexample {
            trial: t,
            message: format!("solver says {got}, brute force says {want}"),
            files: vec![("hg", write_hypergraph(&h))],
        })
    })
}

fn four_clique_trial(args: &CheckArgs, t: usize, seed: u64) -> Result<Trial> {
    let parts = args.parts.clone().unwrap_or(vec![6; 4]);
    let sizes: [usize; 4] = parts
        .try_into()
        .map_err(|v: Vec<usize>| CliError::Usage(format!("--parts needs 4 sizes, got {}", v.len())))?;
    let g = random_four_partite(sizes, density(args, t, [0.3, 0.5, 0.8]), seed)?;
    let (got, want) = (solve_4clique_via_countlca(&g)?, brute_4clique(&g));
    Ok(if got == want {
        Ok(())
    } else {
        Err(Counterexample {
            trial: t,
            message: format!("solver says {got}, brute force says {want}"),
            files: vec![("fp", write_four_partite(&g))],
        })
    })
}
