use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// All-pairs LCA algorithms on DAGs: instance generation, algorithm runs,
/// oracle cross-checks and timing.
#[derive(Debug, Parser)]
#[command(name = "daglca", version)]
pub struct Cli {
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true, env = "DAGLCA_THREADS", value_parser = clap::value_parser!(usize))]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance file.
    #[command(subcommand)]
    Gen(GenKind),
    /// Run one algorithm on input files and write its report.
    Run(RunArgs),
    /// Compare an algorithm against a brute-force oracle on seeded instances.
    Check(CheckArgs),
    /// Time an algorithm on random instances; prints a CSV table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenCommon {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum DagFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Random DAG over a random vertex order.
    RandomDag {
        #[arg(long)]
        n: usize,
        /// Edge probability per forward pair.
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, value_enum, default_value_t)]
        format: DagFormat,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Layered DAG with random edges between consecutive layers.
    Layered {
        /// Comma-separated layer sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        layers: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, value_enum, default_value_t)]
        format: DagFormat,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Partitioned 3-uniform hypergraph; groups are named A, B, ... and the
    /// last one U.
    Hypergraph {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Graph with parts A, B, C, D and random cross-part edges.
    Fourpartite {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Random boolean matrix (input for max-witness).
    Matrix {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[command(flatten)]
        common: GenCommon,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Closure,
    AllLca,
    CountLca,
    KLcaBrute,
    Exact1,
    Exact2,
    ExactK,
    AtleastK,
    AtmostK,
    LatestLca,
    ListK,
    Ap2,
    Ap3,
    MaxWitness,
    MaxWitnessViaVerlca,
    Verify,
    SolveHyperclique,
    #[value(name = "solve-4clique")]
    Solve4clique,
    #[value(name = "solve-4hyperclique-verlca")]
    Solve4hypercliqueVerlca,
    AddOneLca,
}

impl Algorithm {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub alg: Algorithm,
    /// Primary input: DAG, hypergraph, four-partite graph or matrix A.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Second input: matrix B, or the candidate JSON for `verify`.
    #[arg(long = "in2")]
    pub input2: Option<PathBuf>,
    /// Threshold or list length for k-parameterised algorithms; the target
    /// LCA count (3 to 6, default 3) for solve-hyperclique.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Block size L for blocked algorithms (default: ceil(sqrt(n))).
    #[arg(long, value_parser = clap::value_parser!(usize))]
    pub block: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: ReportFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    CountLca,
    KLcaBrute,
    NaiveWitness,
    BruteHyperclique,
    #[value(name = "brute-4clique")]
    Brute4clique,
}

impl Oracle {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub alg: Algorithm,
    #[arg(long)]
    pub oracle: Oracle,
    /// Instance size for DAG and matrix generators.
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Edge or bit probability; cycles through 0.05, 0.1, 0.3 when absent.
    #[arg(long)]
    pub p: Option<f64>,
    /// Group sizes for hypergraph and four-partite generators.
    #[arg(long, value_delimiter = ',')]
    pub parts: Option<Vec<usize>>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Base seed; trial `t` uses `seed + t`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub block: Option<usize>,
    /// Where to write the first counterexample instance.
    #[arg(long, default_value = "counterexample")]
    pub dump: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub alg: Algorithm,
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}
