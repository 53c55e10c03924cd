//! `raftkit`: depth, rafts, crossing graphs and pattern invariants for
//! abelian and table-defined graphs of groups.

mod commands;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "raftkit",
    version,
    about = "Analyses of graphs of groups and their Bass-Serre trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Per-edge traversal bound for commensurability exploration.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub loop_bound: u64,

    /// Total step bound for exploration [default: 2 x number of edges].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub horizon: Option<u64>,

    /// Tree ball radius.
    #[arg(long, global = true, default_value_t = 2)]
    pub radius: usize,

    /// Children kept per infinite-index edge end in tree balls.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub branch_cap: u64,

    /// Write the report here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, env = "GOG_SEED", default_value_t = raftkit_core::qi::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check structural invariants of a graph file.
    Validate { file: PathBuf },
    /// Depth filtration and verdict.
    Depth { file: PathBuf },
    /// Rafts and flotillas at every level.
    Rafts { file: PathBuf },
    /// Crossing graph at a one-vertex depth-zero raft.
    Crossing {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Check the five standing hypotheses.
    Check { file: PathBuf },
    /// Collapse reducible edges until none remain.
    Reduce {
        file: PathBuf,
        /// `lex`, `reverse`, or a comma-separated list of edge ids to try first.
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Edge pattern, slope invariant and rigidity at a vertex, or of a pattern file.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Decide whether two patterns are linearly equivalent.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        vertex_a: Option<String>,
        #[arg(long)]
        vertex_b: Option<String>,
    },
    /// Finite ball in the Bass-Serre tree.
    Ball {
        file: PathBuf,
        /// Root vertex [default: smallest vertex id].
        #[arg(long)]
        root: Option<String>,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
}

/// An exit status with an optional message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const INFINITE: u8 = 3;
    pub const UNKNOWN: u8 = 4;
    pub const UNSUPPORTED: u8 = 5;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok((report, code)) => match write_report(&cli, &report) {
            Ok(()) => ExitCode::from(code),
            Err(f) => fail(f),
        },
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("raftkit: {}", f.message);
    ExitCode::from(f.code)
}

fn write_report(cli: &Cli, report: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, report).map_err(|e| Failure {
            code: exit::INPUT,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}
