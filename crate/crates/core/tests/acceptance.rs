//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 11 is a
//! performance smoke test and never fails the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use daglca_core::graph::Reachability;
use daglca_core::oracle::verify_candidates;
use daglca_core::reductions::{
    add_one_lca, brute_4clique, brute_hyperclique, build_4clique_gadget, random_four_partite,
    random_partite_hypergraph, solve_4clique_via_countlca, solve_4hyperclique_via_verlca, solve_hyperclique_via_eqlca,
};
use daglca_core::witness::default_block_size;
use daglca_core::*;

const DENSITIES: [f64; 3] = [0.05, 0.1, 0.3];

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(trials: usize, failures: Vec<String>) -> Outcome {
        match failures.first() {
            None => Outcome {
                ok: true,
                detail: format!("{trials} trials"),
            },
            Some(first) => Outcome {
                ok: false,
                detail: format!("{} of {trials} trials failed; first: {first}", failures.len()),
            },
        }
    }
}

/// Runs `trial(seed)` for `0..trials` in parallel; `Err` strings are
/// counterexample descriptions.
fn trials(count: usize, trial: impl Fn(u64) -> Result<(), String> + Sync) -> Outcome {
    let mut failures: Vec<(u64, String)> = (0..count as u64)
        .into_par_iter()
        .filter_map(|seed| trial(seed).err().map(|e| (seed, e)))
        .collect();
    failures.sort();
    Outcome::from_failures(
        count,
        failures.into_iter().map(|(s, e)| format!("seed {s}: {e}")).collect(),
    )
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

/// Random DAG with `n` in `lo..=hi` and a density from [`DENSITIES`].
fn dag(seed: u64, salt: u64, lo: usize, hi: usize) -> Dag {
    let mut r = rng(seed, salt);
    let n = r.gen_range(lo..=hi);
    let p = DENSITIES[seed as usize % DENSITIES.len()];
    random_dag(n, p, r.gen()).expect("valid parameters")
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn compare_lists(got: &LcaReport, want: &LcaReport, n: usize) -> Result<(), String> {
    for u in 0..n {
        for v in 0..n {
            if got.list(u, v) != want.list(u, v) {
                return Err(format!(
                    "n={n} pair ({u},{v}): got {:?}, want {:?}",
                    got.list(u, v),
                    want.list(u, v)
                ));
            }
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    trials(500, |seed| {
        let g = dag(seed, 1, 1, 64);
        let n = g.n();
        let lists = k_lcas_bruteforce(&g, n);
        let counts = count_lcas(&g);
        let reach = Reachability::new(&g);
        for u in 0..n {
            for v in 0..n {
                let l = lists.list(u, v);
                if l.len() as u64 != counts.count(u, v) {
                    return Err(format!(
                        "n={n} ({u},{v}): {} listed, {} counted",
                        l.len(),
                        counts.count(u, v)
                    ));
                }
                for &a in l {
                    if l.iter().any(|&b| a != b && reach.reaches(a, b)) {
                        return Err(format!("n={n} ({u},{v}): LCA set {l:?} is not an antichain"));
                    }
                }
                for w in 0..n {
                    let common = reach.reaches(w, u) && reach.reaches(w, v);
                    if common && !l.iter().any(|&c| reach.reaches(w, c)) {
                        return Err(format!("n={n} ({u},{v}): common ancestor {w} reaches no LCA"));
                    }
                }
            }
        }
        Ok(())
    })
}

fn criterion_2() -> Outcome {
    trials(100, |seed| {
        let mut r = rng(seed, 2);
        let p = DENSITIES[seed as usize % DENSITIES.len()];
        let g = random_dag(128, p, r.gen()).expect("valid parameters");
        let truth = k_lcas_bruteforce(&g, 3);
        let e1 = exact1_lca(&g, r.gen()).map_err(|e| format!("exact1: {e}"))?;
        let e2 = exact2_lca(&g, r.gen()).map_err(|e| format!("exact2: {e}"))?;
        for (report, target) in [(&e1, 1), (&e2, 2)] {
            for u in 0..128 {
                for v in 0..128 {
                    let want = truth.list(u, v);
                    let want = (want.len() == target).then(|| sorted(want.to_vec()));
                    let got = report.get(u, v);
                    let got = (got != ExactEntry::NotThisCount).then(|| sorted(got.vertices()));
                    if got != want {
                        return Err(format!("exact{target} ({u},{v}): got {got:?}, want {want:?}"));
                    }
                }
            }
        }
        Ok(())
    })
}

fn oracle_detector(h: &Dag, level: usize) -> Result<BoolMatrix> {
    let c = count_lcas(h);
    Ok(BoolMatrix::from_fn(h.n(), h.n(), |u, v| c.count(u, v) >= level as u64))
}

fn criterion_3() -> Outcome {
    trials(100, |seed| {
        let g = dag(seed, 3, 1, 96);
        let n = g.n();
        for k in [1, 2, 3, 5, n] {
            let got = list_k_lcas(&g, k, oracle_detector, default_block_size(n)).map_err(|e| e.to_string())?;
            compare_lists(&got, &k_lcas_bruteforce(&g, k), n).map_err(|e| format!("k={k} {e}"))?;
        }
        Ok(())
    })
}

fn criterion_4() -> Outcome {
    trials(100, |seed| {
        // L = 4 needs n >= 4
        let g = dag(seed, 4, 4, 96);
        let n = g.n();
        let blocks = [1, 4, default_block_size(n), n];
        for (k, alg) in [(2, ap2_lca as fn(&Dag, usize) -> Result<LcaReport>), (3, ap3_lca)] {
            let want = k_lcas_bruteforce(&g, k);
            for l in blocks {
                let got = alg(&g, l).map_err(|e| e.to_string())?;
                compare_lists(&got, &want, n).map_err(|e| format!("ap{k} L={l} {e}"))?;
            }
        }
        Ok(())
    })
}

fn criterion_5() -> Outcome {
    trials(100, |seed| {
        let g = dag(seed, 5, 1, 48);
        let n = g.n();
        let (h, rho) = add_one_lca(&g);
        let (before, after) = (count_lcas(&g), count_lcas(&h));
        for u in 0..n {
            for v in (0..n).filter(|&v| v != u) {
                if after.count(rho[u], rho[v]) != before.count(u, v) + 1 {
                    return Err(format!(
                        "n={n} ({u},{v}): {} then {}",
                        before.count(u, v),
                        after.count(rho[u], rho[v])
                    ));
                }
            }
        }
        Ok(())
    })
}

fn criterion_6() -> Outcome {
    trials(100, |seed| {
        let g = dag(seed, 6, 1, 64);
        let n = g.n();
        let counts = count_lcas(&g);
        for k in 0..=4u64 {
            let ku = k as usize;
            let cases = [
                (
                    "exact",
                    exact_k(&g, ku, seed),
                    Box::new(|c: u64| c == k) as Box<dyn Fn(u64) -> bool>,
                ),
                ("atmost", atmost_k(&g, ku, seed), Box::new(|c| c <= k)),
                ("atleast", atleast_k(&g, ku, seed), Box::new(|c| c >= k)),
            ];
            for (name, got, want) in cases {
                let got = got.map_err(|e| format!("{name}_{k}: {e}"))?;
                for u in 0..n {
                    for v in 0..n {
                        if got.get(u, v) != want(counts.count(u, v)) {
                            return Err(format!("{name}_{k} n={n} ({u},{v}) count {}", counts.count(u, v)));
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

fn random_bool(r: &mut ChaCha8Rng, rows: usize, cols: usize, p: f64) -> BoolMatrix {
    BoolMatrix::from_fn(rows, cols, |_, _| r.gen_bool(p))
}

fn naive_witness(a: &BoolMatrix, b: &BoolMatrix, i: usize, j: usize) -> Option<usize> {
    (0..a.cols()).rev().find(|&k| a.get(i, k) && b.get(k, j))
}

fn witness_pair(seed: u64, salt: u64, max_n: usize) -> (BoolMatrix, BoolMatrix) {
    let mut r = rng(seed, salt);
    let n = r.gen_range(1..=max_n);
    let p = [0.02, 0.1, 0.3, 0.6][seed as usize % 4];
    (random_bool(&mut r, n, n, p), random_bool(&mut r, n, n, p))
}

fn criterion_7() -> Outcome {
    let direct = trials(200, |seed| {
        let (a, b) = witness_pair(seed, 7, 64);
        let n = a.rows();
        let c = max_witness_direct(&a, &b, default_block_size(n)).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                if c.get(i, j) != naive_witness(&a, &b, i, j) {
                    return Err(format!("direct n={n} ({i},{j})"));
                }
            }
        }
        Ok(())
    });
    let via = trials(100, |seed| {
        let (a, b) = witness_pair(seed, 77, 32);
        let n = a.rows();
        let want = max_witness_direct(&a, &b, default_block_size(n)).map_err(|e| e.to_string())?;
        let mut calls = 0u32;
        let got = max_witness_via_verlca(&a, &b, |g, cand| {
            calls += 1;
            Ok(verify_candidates(g, cand)?.bits)
        })
        .map_err(|e| e.to_string())?;
        let padded = (n + 1).next_power_of_two();
        if calls != padded.trailing_zeros() {
            return Err(format!("n={n}: {calls} verifier calls for padded size {padded}"));
        }
        if got != want {
            return Err(format!("via-verlca differs from direct at n={n}"));
        }
        Ok(())
    });
    Outcome {
        ok: direct.ok && via.ok,
        detail: format!("direct: {}; via verifier: {}", direct.detail, via.detail),
    }
}

fn hyperclique_family(count: usize, groups: &[(&str, usize)], k: usize, salt: u64) -> Outcome {
    trials(count, |seed| {
        let p = [0.3, 0.6, 0.9][seed as usize % 3];
        let h = random_partite_hypergraph(groups, p, rng(seed, salt).gen()).map_err(|e| e.to_string())?;
        let got = solve_hyperclique_via_eqlca(&h, k).map_err(|e| e.to_string())?;
        let want = brute_hyperclique(&h, groups.len());
        (got == want)
            .then_some(())
            .ok_or(format!("k={k} p={p}: solver {got}, brute {want}"))
    })
}

fn criterion_8() -> Outcome {
    let parts = [
        (3, vec![("A", 4), ("B", 4), ("C", 4), ("U", 16)]),
        (4, vec![("A", 4), ("B", 2), ("C", 2), ("D", 2), ("U", 16)]),
        (6, vec![("A", 3), ("B", 3), ("C", 3), ("D", 3), ("U", 9)]),
    ];
    let results: Vec<(usize, Outcome)> = parts
        .iter()
        .map(|(k, g)| (*k, hyperclique_family(200, g, *k, 8 + *k as u64)))
        .collect();
    Outcome {
        ok: results.iter().all(|(_, o)| o.ok),
        detail: results
            .iter()
            .map(|(k, o)| format!("k={k}: {}", o.detail))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn criterion_9() -> Outcome {
    let solver = trials(300, |seed| {
        let p = [0.3, 0.5, 0.8][seed as usize % 3];
        let g = random_four_partite([6; 4], p, rng(seed, 9).gen()).map_err(|e| e.to_string())?;
        let got = solve_4clique_via_countlca(&g).map_err(|e| e.to_string())?;
        let want = brute_4clique(&g);
        (got == want)
            .then_some(())
            .ok_or(format!("p={p}: solver {got}, brute {want}"))
    });
    let claim = trials(50, |seed| {
        let mut r = rng(seed, 99);
        let sizes = [(); 4].map(|_| r.gen_range(1..=5));
        let g = random_four_partite(sizes, 0.5, r.gen()).map_err(|e| e.to_string())?;
        let gadget = build_4clique_gadget(&g);
        let closure = transitive_closure(&gadget.graph);
        let (pa, pb, pc, pd) = (g.part("A"), g.part("B"), g.part("C"), g.part("D"));
        for (ai, a) in pa.clone().enumerate() {
            for (bi, b) in pb.clone().enumerate() {
                for (ci, c) in pc.clone().enumerate() {
                    let want = g.has_edge(c, a)
                        && g.has_edge(c, b)
                        && !pd
                            .clone()
                            .any(|d| g.has_edge(c, d) && g.has_edge(d, a) && g.has_edge(d, b));
                    let got = is_lca(&closure, gadget.a[ai], gadget.b[bi], gadget.c[ci]).map_err(|e| e.to_string())?;
                    if got != want {
                        return Err(format!("sizes {sizes:?} (a,b,c)=({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    });
    Outcome {
        ok: solver.ok && claim.ok,
        detail: format!("solver: {}; LCA characterisation: {}", solver.detail, claim.detail),
    }
}

fn criterion_10() -> Outcome {
    let groups = [("A", 4), ("B", 4), ("C", 4), ("U", 16)];
    trials(200, |seed| {
        let p = [0.3, 0.6, 0.9][seed as usize % 3];
        let h = random_partite_hypergraph(&groups, p, rng(seed, 10).gen()).map_err(|e| e.to_string())?;
        let got = solve_4hyperclique_via_verlca(&h).map_err(|e| e.to_string())?;
        let want = brute_hyperclique(&h, 4);
        (got == want)
            .then_some(())
            .ok_or(format!("p={p}: solver {got}, brute {want}"))
    })
}

fn criterion_11() -> Outcome {
    let g = random_dag(2048, 0.01, 11).expect("valid parameters");
    let t = Instant::now();
    let d = transitive_closure(&g);
    let closure_time = t.elapsed();
    let mut r = rng(11, 11);
    let (a, b) = (
        random_bool(&mut r, 1024, 1024, 0.05),
        random_bool(&mut r, 1024, 1024, 0.05),
    );
    let t = Instant::now();
    let c = max_witness_direct(&a, &b, default_block_size(1024)).expect("square inputs");
    let witness_time = t.elapsed();
    std::hint::black_box((d, c));
    Outcome {
        ok: closure_time <= Duration::from_secs(10) && witness_time <= Duration::from_secs(60),
        detail: format!(
            "closure n=2048 {:.2}s (limit 10s), max-witness n=1024 {:.2}s (limit 60s)",
            closure_time.as_secs_f64(),
            witness_time.as_secs_f64()
        ),
    }
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    gating: bool,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let min = |m: u64| Duration::from_secs(60 * m);
    let list = [
        Criterion {
            id: 1,
            name: "oracle self-consistency",
            budget: min(2),
            gating: true,
            run: criterion_1,
        },
        Criterion {
            id: 2,
            name: "exact-1/exact-2 vs oracle",
            budget: min(5),
            gating: true,
            run: criterion_2,
        },
        Criterion {
            id: 3,
            name: "k-LCA listing vs oracle",
            budget: min(5),
            gating: true,
            run: criterion_3,
        },
        Criterion {
            id: 4,
            name: "ap2/ap3 vs oracle, all block sizes",
            budget: min(10),
            gating: true,
            run: criterion_4,
        },
        Criterion {
            id: 5,
            name: "add-one-LCA count shift (u != v)",
            budget: min(2),
            gating: true,
            run: criterion_5,
        },
        Criterion {
            id: 6,
            name: "exact/atmost/atleast-k identities",
            budget: min(2),
            gating: true,
            run: criterion_6,
        },
        Criterion {
            id: 7,
            name: "max-witness direct and via verifier",
            budget: min(5),
            gating: true,
            run: criterion_7,
        },
        Criterion {
            id: 8,
            name: "hyperclique via exact-k LCA",
            budget: min(10),
            gating: true,
            run: criterion_8,
        },
        Criterion {
            id: 9,
            name: "4-clique via LCA counts",
            budget: min(5),
            gating: true,
            run: criterion_9,
        },
        Criterion {
            id: 10,
            name: "4-hyperclique via LCA verifier",
            budget: min(5),
            gating: true,
            run: criterion_10,
        },
        Criterion {
            id: 11,
            name: "performance smoke (non-gating)",
            budget: min(10),
            gating: false,
            run: criterion_11,
        },
    ];

    let mut gating_failures = 0;
    for c in &list {
        let t = Instant::now();
        let out = (c.run)();
        let elapsed = t.elapsed();
        let in_budget = elapsed <= c.budget;
        let pass = out.ok && in_budget;
        let budget_note = if in_budget {
            String::new()
        } else {
            format!(", over {}s budget", c.budget.as_secs())
        };
        println!(
            "criterion {:>2}: {} {} ({}; {:.1}s{budget_note})",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            out.detail,
            elapsed.as_secs_f64()
        );
        if !pass && c.gating {
            gating_failures += 1;
        }
    }
    if gating_failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{gating_failures} gating criteria failed");
        ExitCode::FAILURE
    }
}
