//! Text and JSON formats for instances and reports.
//!
//! - DAG text: `n m`, then `m` lines `u v`. DAG JSON:
//!   `{"n": 4, "edges": [[0, 2], ...]}`. Writers sort edges.
//! - Boolean matrix: `rows cols`, then one line of `0`/`1` characters per row.
//! - Hypergraph: an optional `#partition A=4 B=4 C=4 U=16` line giving
//!   contiguous group sizes in id order, then `n m`, then `m` lines `a b c`.
//! - Four-partite graph: `#partition A=.. B=.. C=.. D=..`, `n m`, `m` lines
//!   `u v`.
//! - Reports: `{"kind": ..., "n": ..., "data": [[...]]}`, with `null` for
//!   NONE entries. Counts also export as CSV; witness and latest-LCA exports
//!   use `-1` for NONE in CSV.
//!
//! Blank lines and lines starting with `#` (other than the partition
//! header) are ignored by the text parsers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ExactEntry, ExactReport};
use crate::graph::Dag;
use crate::matrix::BoolMatrix;
use crate::oracle::{CandidateMatrix, LcaReport, Verification};
use crate::reductions::{FourPartiteGraph, Hypergraph3, Partition};
use crate::witness::WitnessMatrix;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Non-comment lines, each split into whitespace-separated tokens, plus
/// the partition header if present.
struct Lines<'a> {
    partition: Option<&'a str>,
    rows: Vec<(usize, Vec<&'a str>)>,
}

fn lex(text: &str) -> Lines<'_> {
    let mut partition = None;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("#partition") {
            partition = Some(rest.trim());
        } else if !line.is_empty() && !line.starts_with('#') {
            rows.push((i + 1, line.split_whitespace().collect()));
        }
    }
    Lines { partition, rows }
}

fn numbers<const K: usize>(line: usize, tokens: &[&str]) -> Result<[usize; K]> {
    if tokens.len() != K {
        return Err(parse_err(format!(
            "line {line}: expected {K} numbers, found {}",
            tokens.len()
        )));
    }
    let mut out = [0; K];
    for (o, t) in out.iter_mut().zip(tokens) {
        *o = t
            .parse()
            .map_err(|_| parse_err(format!("line {line}: {t:?} is not a non-negative integer")))?;
    }
    Ok(out)
}

/// Header `n m` followed by exactly `m` records of `K` numbers.
fn records<const K: usize>(lines: &Lines<'_>) -> Result<(usize, Vec<[usize; K]>)> {
    let (first, rest) = lines
        .rows
        .split_first()
        .ok_or_else(|| parse_err("missing `n m` header"))?;
    let [n, m] = numbers::<2>(first.0, &first.1)?;
    if rest.len() != m {
        return Err(parse_err(format!("header announces {m} records, found {}", rest.len())));
    }
    let recs = rest.iter().map(|(i, t)| numbers::<K>(*i, t)).collect::<Result<_>>()?;
    Ok((n, recs))
}

pub fn parse_dag_text(text: &str) -> Result<Dag> {
    let (n, edges) = records::<2>(&lex(text))?;
    Dag::new(n, edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn write_dag_text(g: &Dag) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[derive(Serialize, Deserialize)]
struct DagJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn parse_dag_json(text: &str) -> Result<Dag> {
    let d: DagJson = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    Dag::new(d.n, d.edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn write_dag_json(g: &Dag) -> String {
    let d = DagJson {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&d).expect("plain data") + "\n"
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_dag(text: &str) -> Result<Dag> {
    if text.trim_start().starts_with('{') {
        parse_dag_json(text)
    } else {
        parse_dag_text(text)
    }
}

pub fn parse_bool_matrix(text: &str) -> Result<BoolMatrix> {
    let lines = lex(text);
    let (first, rest) = lines
        .rows
        .split_first()
        .ok_or_else(|| parse_err("missing `rows cols` header"))?;
    let [rows, cols] = numbers::<2>(first.0, &first.1)?;
    if rest.len() != rows {
        return Err(parse_err(format!("header announces {rows} rows, found {}", rest.len())));
    }
    let mut m = BoolMatrix::zeros(rows, cols);
    for (i, (line, tokens)) in rest.iter().enumerate() {
        let row: String = tokens.concat();
        if row.len() != cols {
            return Err(parse_err(format!(
                "line {line}: expected {cols} columns, found {}",
                row.len()
            )));
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(i, j, true),
                _ => return Err(parse_err(format!("line {line}: unexpected character {ch:?}"))),
            }
        }
    }
    Ok(m)
}

pub fn write_bool_matrix(m: &BoolMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        s.extend((0..m.cols()).map(|j| if m.get(i, j) { '1' } else { '0' }));
        s.push('\n');
    }
    s
}

fn parse_partition(header: &str) -> Result<Partition> {
    let groups = header
        .split_whitespace()
        .map(|g| {
            let (name, size) = g
                .split_once('=')
                .ok_or_else(|| parse_err(format!("partition entry {g:?} is not NAME=SIZE")))?;
            let size = size
                .parse::<usize>()
                .map_err(|_| parse_err(format!("partition size {size:?} is not an integer")))?;
            Ok((name.to_string(), size))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(groups)
}

fn write_partition(p: &Partition) -> String {
    let groups: Vec<String> = p
        .names()
        .iter()
        .zip(p.sizes())
        .map(|(n, s)| format!("{n}={s}"))
        .collect();
    format!("#partition {}\n", groups.join(" "))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3> {
    let lines = lex(text);
    let partition = lines.partition.map(parse_partition).transpose()?;
    let (n, edges) = records::<3>(&lines)?;
    Hypergraph3::new(n, edges, partition)
}

pub fn write_hypergraph(h: &Hypergraph3) -> String {
    let mut s = h.partition().map(write_partition).unwrap_or_default();
    let _ = writeln!(s, "{} {}", h.n(), h.m());
    for [a, b, c] in h.edges() {
        let _ = writeln!(s, "{a} {b} {c}");
    }
    s
}

pub fn parse_four_partite(text: &str) -> Result<FourPartiteGraph> {
    let lines = lex(text);
    let partition = lines
        .partition
        .map(parse_partition)
        .transpose()?
        .ok_or_else(|| Error::NotFourPartite("missing #partition header".into()))?;
    let (n, edges) = records::<2>(&lines)?;
    if n != partition.n() {
        return Err(Error::NotFourPartite(format!(
            "partition covers {} of {n} vertices",
            partition.n()
        )));
    }
    FourPartiteGraph::new(partition, edges.into_iter().map(|[u, v]| (u, v)))
}

pub fn write_four_partite(g: &FourPartiteGraph) -> String {
    let mut s = write_partition(g.partition());
    let _ = writeln!(s, "{} {}", g.n(), g.edges().len());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

fn rows_of<T>(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Vec<Vec<T>> {
    (0..n).map(|u| (0..n).map(|v| f(u, v)).collect()).collect()
}

pub fn report_to_json(r: &LcaReport) -> Value {
    let n = r.n();
    let data = match r {
        LcaReport::Counts(_) => json!(rows_of(n, |u, v| r.count(u, v))),
        LcaReport::Lists { .. } => json!(rows_of(n, |u, v| r.list(u, v).to_vec())),
        LcaReport::Decision(_) => json!(rows_of(n, |u, v| r.bit(u, v) as u8)),
    };
    json!({ "kind": r.kind().as_str(), "n": n, "data": data })
}

pub fn decision_to_json(m: &BoolMatrix) -> Value {
    json!({ "kind": "decision", "n": m.rows(), "data": rows_of(m.rows(), |u, v| m.get(u, v) as u8) })
}

/// Entries are `null` or the sorted LCA list.
pub fn exact_report_to_json(r: &ExactReport) -> Value {
    let data = rows_of(r.n(), |u, v| match r.get(u, v) {
        ExactEntry::NotThisCount => Value::Null,
        e => json!(e.vertices()),
    });
    json!({
        "kind": format!("exact{}", r.target()),
        "n": r.n(),
        "attempts": r.attempts,
        "rejected_matches": r.rejected_matches,
        "data": data,
    })
}

pub fn witness_to_json(c: &WitnessMatrix) -> Value {
    json!({ "kind": "witness", "rows": c.rows(), "cols": c.cols(), "data": c.to_rows() })
}

pub fn verification_to_json(v: &Verification) -> Value {
    let n = v.bits.rows();
    json!({
        "kind": "verification",
        "n": n,
        "any_error": v.any_error,
        "data": rows_of(n, |u, w| v.bits.get(u, w) as u8),
    })
}

#[derive(Deserialize)]
struct CandidateJson {
    n: usize,
    data: Vec<Vec<Option<usize>>>,
}

/// `{"n": .., "data": [[w | null, ...], ...]}`.
pub fn parse_candidates(text: &str) -> Result<CandidateMatrix> {
    let c: CandidateJson = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    if c.data.len() != c.n || c.data.iter().any(|r| r.len() != c.n) {
        return Err(parse_err(format!("candidate data is not {0}x{0}", c.n)));
    }
    CandidateMatrix::from_entries(c.n, c.data.concat())
}

pub fn candidates_to_json(c: &CandidateMatrix) -> Value {
    json!({ "kind": "candidates", "n": c.n(), "data": rows_of(c.n(), |u, v| c.get(u, v)) })
}

fn csv_rows<T: ToString>(rows: Vec<Vec<T>>) -> String {
    let mut s = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(T::to_string).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn sentinel(x: Option<usize>) -> i64 {
    x.map_or(-1, |k| k as i64)
}

/// Counts as CSV; a lists report exports its first entry per pair (`-1`
/// when empty) and a decision report its bits.
pub fn report_to_csv(r: &LcaReport) -> String {
    let n = r.n();
    match r {
        LcaReport::Counts(_) => csv_rows(rows_of(n, |u, v| r.count(u, v))),
        LcaReport::Lists { .. } => csv_rows(rows_of(n, |u, v| sentinel(r.list(u, v).first().copied()))),
        LcaReport::Decision(_) => csv_rows(rows_of(n, |u, v| r.bit(u, v) as u8)),
    }
}

pub fn witness_to_csv(c: &WitnessMatrix) -> String {
    csv_rows(
        c.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(sentinel).collect())
            .collect(),
    )
}
