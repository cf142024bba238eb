use serde_json::{json, Value};

use daglca_core::io::{
    exact_report_to_json, parse_bool_matrix, parse_candidates, parse_dag, parse_four_partite, parse_hypergraph,
    report_to_csv, report_to_json, verification_to_json, witness_to_csv, witness_to_json,
};
use daglca_core::listing::list_k_lcas_default;
use daglca_core::oracle::CandidateMatrix;
use daglca_core::reductions::{solve_4clique_via_countlca, solve_4hyperclique_via_verlca, solve_hyperclique_via_eqlca};
use daglca_core::witness::default_block_size;
use daglca_core::*;

use crate::args::{Algorithm, ReportFormat, RunArgs};
use crate::error::{CliError, Result};
use crate::output::{emit, json_text, read_input, Input, Provenance};

/// Everything an algorithm can produce.
pub enum Outcome {
    Lca(LcaReport),
    Bits { kind: &'static str, bits: BoolMatrix },
    Exact(ExactReport),
    Witness(WitnessMatrix),
    Verified(Verification),
    Answer { problem: &'static str, found: bool },
    Shifted { graph: Dag, rho: Vec<usize> },
}

pub fn require_k(alg: Algorithm, k: Option<usize>) -> Result<usize> {
    k.ok_or_else(|| CliError::Usage(format!("--alg {} needs --k", alg.name())))
}

pub fn block_for(n: usize, block: Option<usize>) -> Result<usize> {
    match block {
        Some(0) => Err(CliError::Usage("--block must be at least 1".into())),
        Some(l) => Ok(l),
        None => Ok(default_block_size(n)),
    }
}

/// Runs a DAG-input algorithm.
pub fn run_on_dag(alg: Algorithm, g: &Dag, k: Option<usize>, seed: u64, block: Option<usize>) -> Result<Outcome> {
    use Algorithm::*;
    let n = g.n();
    let bits = |kind, bits| Outcome::Bits { kind, bits };
    Ok(match alg {
        Closure => bits("closure", transitive_closure(g)),
        AllLca => Outcome::Lca(k_lcas_bruteforce(g, n)),
        CountLca => Outcome::Lca(count_lcas(g)),
        KLcaBrute => Outcome::Lca(k_lcas_bruteforce(g, require_k(alg, k)?)),
        Exact1 => Outcome::Exact(exact1_lca(g, seed)?),
        Exact2 => Outcome::Exact(exact2_lca(g, seed)?),
        ExactK => bits("exact-k", exact_k(g, require_k(alg, k)?, seed)?),
        AtleastK => bits("atleast-k", atleast_k(g, require_k(alg, k)?, seed)?),
        AtmostK => bits("atmost-k", atmost_k(g, require_k(alg, k)?, seed)?),
        LatestLca => Outcome::Lca(latest_lca(g)),
        ListK => {
            let k = require_k(alg, k)?;
            match block {
                None => Outcome::Lca(list_k_lcas_default(g, k, seed)?),
                Some(_) => Outcome::Lca(list_k_lcas(g, k, |h, l| atleast_k(h, l, seed), block_for(n, block)?)?),
            }
        }
        Ap2 => Outcome::Lca(ap2_lca(g, block_for(n, block)?)?),
        Ap3 => Outcome::Lca(ap3_lca(g, block_for(n, block)?)?),
        AddOneLca => {
            let (graph, rho) = reductions::add_one_lca(g);
            Outcome::Shifted { graph, rho }
        }
        _ => return Err(CliError::Usage(format!("--alg {} does not take a DAG", alg.name()))),
    })
}

pub fn run_on_matrices(alg: Algorithm, a: &BoolMatrix, b: &BoolMatrix, block: Option<usize>) -> Result<Outcome> {
    let c = match alg {
        Algorithm::MaxWitness => max_witness_direct(a, b, block_for(a.cols(), block)?)?,
        Algorithm::MaxWitnessViaVerlca => max_witness_via_verlca(a, b, |g, cand| Ok(verify_candidates(g, cand)?.bits))?,
        _ => unreachable!("matrix algorithms only"),
    };
    Ok(Outcome::Witness(c))
}

fn bits_json(kind: &str, m: &BoolMatrix) -> Value {
    let data: Vec<Vec<u8>> = m.to_rows();
    json!({ "kind": kind, "n": m.rows(), "data": data })
}

fn bits_csv(m: &BoolMatrix) -> String {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

fn to_json(o: &Outcome) -> Value {
    match o {
        Outcome::Lca(r) => report_to_json(r),
        Outcome::Bits { kind, bits } => bits_json(kind, bits),
        Outcome::Exact(r) => exact_report_to_json(r),
        Outcome::Witness(c) => witness_to_json(c),
        Outcome::Verified(v) => verification_to_json(v),
        Outcome::Answer { problem, found } => {
            json!({ "kind": "answer", "problem": problem, "found": found })
        }
        Outcome::Shifted { graph, rho } => json!({
            "kind": "add-one-lca",
            "graph": { "n": graph.n(), "edges": graph.edges() },
            "rho": rho,
        }),
    }
}

fn to_csv(o: &Outcome) -> Option<String> {
    Some(match o {
        Outcome::Lca(r) => report_to_csv(r),
        Outcome::Bits { bits, .. } => bits_csv(bits),
        Outcome::Exact(r) => bits_csv(&r.to_bits()),
        Outcome::Witness(c) => witness_to_csv(c),
        Outcome::Verified(v) => bits_csv(&v.bits),
        Outcome::Answer { found, .. } => format!("found\n{found}\n"),
        Outcome::Shifted { .. } => return None,
    })
}

pub fn render(o: &Outcome, prov: &Provenance, format: ReportFormat, alg: Algorithm) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(json_text(&prov.wrap_json(to_json(o)))),
        ReportFormat::Csv => to_csv(o)
            .map(|body| prov.csv_header() + &body)
            .ok_or_else(|| CliError::Usage(format!("--alg {} has no CSV output", alg.name()))),
    }
}

fn second_input(args: &RunArgs) -> Result<Input> {
    let path = args
        .input2
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("--alg {} needs --in2", args.alg.name())))?;
    read_input(path)
}

pub fn run(args: RunArgs) -> Result<()> {
    use Algorithm::*;
    let alg = args.alg;
    let input = read_input(&args.input)?;
    let mut inputs = vec![];
    let outcome = match alg {
        MaxWitness | MaxWitnessViaVerlca => {
            let second = second_input(&args)?;
            let a = input.parse(parse_bool_matrix)?;
            let b = second.parse(parse_bool_matrix)?;
            inputs.push(second);
            run_on_matrices(alg, &a, &b, args.block)?
        }
        Verify => {
            let second = second_input(&args)?;
            let g = input.parse(parse_dag)?;
            let cand: CandidateMatrix = second.parse(parse_candidates)?;
            inputs.push(second);
            Outcome::Verified(verify_candidates(&g, &cand)?)
        }
        SolveHyperclique => {
            let h = input.parse(parse_hypergraph)?;
            let found = solve_hyperclique_via_eqlca(&h, args.k.unwrap_or(3))?;
            Outcome::Answer {
                problem: "hyperclique",
                found,
            }
        }
        Solve4hypercliqueVerlca => {
            let h = input.parse(parse_hypergraph)?;
            Outcome::Answer {
                problem: "4-hyperclique",
                found: solve_4hyperclique_via_verlca(&h)?,
            }
        }
        Solve4clique => {
            let g = input.parse(parse_four_partite)?;
            Outcome::Answer {
                problem: "4-clique",
                found: solve_4clique_via_countlca(&g)?,
            }
        }
        _ => {
            let g = input.parse(parse_dag)?;
            run_on_dag(alg, &g, args.k, args.seed, args.block)?
        }
    };

    let all: Vec<&Input> = std::iter::once(&input).chain(&inputs).collect();
    let mut prov = Provenance::new(&alg.name(), args.seed, &all);
    if let Some(k) = args.k {
        prov = prov.with("k", json!(k));
    }
    if let Some(l) = args.block {
        prov = prov.with("block", json!(l));
    }
    let text = render(&outcome, &prov, args.format, alg)?;
    emit(args.out.as_deref(), &text)
}
