mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "qgraph", version, about = "Search, verify and classify graphical quantum codes")]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,

    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, env = "QGRAPH_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Search coding cliques on a graph.
    SearchClique {
        /// g6:<graph6>, family:<kind>:<n>, or a JSON file
        #[arg(long)]
        graph: String,
        #[arg(long)]
        d: usize,
        /// max, all-max, at-least:K or exhaustive:K
        #[arg(long, default_value = "max")]
        mode: String,
        #[arg(long)]
        max_results: Option<usize>,
        /// Seconds before the search stops and reports itself incomplete.
        #[arg(long, env = "QGRAPH_TIME_BUDGET_SECS")]
        time_budget: Option<f64>,
    },
    /// Search coding groups of dimension 2^k on a graph.
    SearchGroup {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_results: Option<usize>,
        #[arg(long, env = "QGRAPH_TIME_BUDGET_SECS")]
        time_budget: Option<f64>,
    },
    /// Check Conditions 0-2 and Knill-Laflamme for a code file (or catalog:<name>, or -).
    Verify {
        code: String,
        /// Distance to check instead of the one stored in the code.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Weight distribution of a code.
    Weights { code: String },
    /// Frequency series F_d(S) of a code, for one d or all of them.
    Freq {
        code: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Transport a code through local complementation at a vertex (1-indexed).
    Lc {
        code: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Standard form of a stabilizer code given as text, a text file or a JSON file.
    StandardForm { stabilizer: String },
    /// Graph and coding group of a stabilizer code.
    ToGraph { stabilizer: String },
    /// List catalog entries, or load and verify one.
    Catalog { name: Option<String> },
    /// Classify all [[n,k,d]] stabilizer codes on graphs up to eight vertices.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Keep smaller codes padded with a disconnected graph state.
        #[arg(long)]
        include_decomposable: bool,
        /// Skip the explicit equivalence-witness check.
        #[arg(long)]
        no_witness: bool,
    },
}

#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Input(String),
}

impl From<qgraph::Error> for Failure {
    fn from(e: qgraph::Error) -> Self {
        match e {
            qgraph::Error::Verification(_) => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Exit codes: 0 success, 1 verification failure, 2 malformed input, 3 incomplete search.
pub struct Output {
    pub json: serde_json::Value,
    pub table: String,
    pub exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(out) => {
            if cli.table {
                print!("{}", out.table);
            } else {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            }
            ExitCode::from(out.exit)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
