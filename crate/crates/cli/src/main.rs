//! `tightframe`: command-line front end. Machine JSON goes to stdout (or to
//! `-o DIR`), human tables to stderr.

mod commands;
mod manifest;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{run, Outcome};

#[derive(Parser, Debug)]
#[command(name = "tightframe", version, about = "Hamilton frameworks in dense graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output style on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub format: OutFormat,
    /// Write result.json and manifest.json into this directory.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WantFlag {
    Aperiodic,
    ZeroFree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyFlag {
    Random,
    AdversarialStructured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bkt,
    PosaExtremalK,
    OrePosaSeparator,
    FragileFramework,
    Random,
    MultipartiteRandom,
    Blowup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Powcycle,
    Factor,
    Framework,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tight components of K_k(G) with a framework verdict for each.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Certify (G, H); H defaults to K_k(G).
    Certify {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        #[arg(long, value_enum)]
        want: Vec<WantFlag>,
    },
    /// Re-certify under random or structured (μ,μ)-approximations.
    Probe {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StrategyFlag::Random)]
        strategy: StrategyFlag,
        #[arg(long, value_enum)]
        want: Vec<WantFlag>,
    },
    /// Closed tight walk through every edge, or a walk between two ordered edges.
    Walk {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Required length modulo k for the closed walk.
        #[arg(long)]
        congruence: Option<usize>,
        /// Comma-separated ordered edge to start from.
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        /// Comma-separated (k+1)-clique used to fix the length.
        #[arg(long, requires = "from")]
        clique: Option<String>,
    },
    /// Embed a guest into the blow-up of a reduced graph.
    Embed {
        /// Reduced graph R.
        reduced: PathBuf,
        guest: PathBuf,
        #[arg(long)]
        k: usize,
        /// Comma-separated cluster sizes.
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "0")]
        pi: String,
        #[arg(long, default_value = "0")]
        alpha: String,
    },
    /// Write a construction or random instance with its verifier results.
    Generate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        snap: bool,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Base graph for blow-ups.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Brute-force ground truth.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long)]
        hypergraph: Option<PathBuf>,
    },
    /// Framework verdict against the oracle.
    Compare {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Also probe robustness of the best component at this μ.
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, requires = "mu")]
        seed: Option<u64>,
    },
    /// Run every entry of a manifest into an artifact directory.
    Batch { manifest: PathBuf },
}

fn emit(cli: &Cli, outcome: &Outcome) {
    let to_stdout = cli.global.out.is_none() || matches!(cli.command, Command::Batch { .. });
    if !(to_stdout && cli.global.format == OutFormat::Table) {
        eprint!("{}", outcome.table);
    }
    if to_stdout {
        let text = match cli.global.format {
            OutFormat::Json => serde_json::to_string_pretty(&outcome.json).expect("json") + "\n",
            OutFormat::Table => outcome.table.clone(),
        };
        // A closed pipe (`| head`) is not an error worth reporting.
        let _ = std::io::stdout().lock().write_all(text.as_bytes());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli.command, &cli.global, Path::new(""), &argv) {
        Ok(outcome) => {
            emit(&cli, &outcome);
            ExitCode::from(outcome.status.code())
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status.code())
        }
    }
}
