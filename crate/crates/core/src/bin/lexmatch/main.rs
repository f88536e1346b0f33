mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lexmatch::Error;

#[derive(Parser, Debug)]
#[command(
    name = "lexmatch",
    version,
    about = "Matching counts for lex, colex and threshold graphs"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Suppress progress and summaries on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    #[arg(long, default_value_t = lexmatch::verify::DEFAULT_MAX_INSTANCES, global = true)]
    pub max_instances: u64,
    /// Seed for the randomized `check` command.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a lex, colex or lex-bipartite graph.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Write the graph here instead of stdout.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Matching vector of a graph file (`-` for stdin).
    Count {
        #[arg(default_value = "-")]
        input: String,
        /// Also evaluate the matching polynomial at this value (`3`, `3/2`, `0.75`).
        #[arg(long)]
        poly: Option<String>,
    },
    /// Compress a graph file to a threshold (or chain) graph.
    Compress {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Young diagram operations; diagrams are written `"l r : a,b,c"`.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    /// Exhaustive and targeted checks.
    Verify {
        #[command(subcommand)]
        mode: VerifyMode,
        #[command(flatten)]
        out: ReportPaths,
    },
    /// Seeded random comparisons of the counting and compression code.
    Check {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    Lex { n: usize, e: usize },
    Colex { n: usize, e: usize },
    Lexbip { l: usize, r: usize, e: usize },
}

#[derive(Subcommand, Debug)]
pub enum DiagramOp {
    Corners {
        diagram: String,
    },
    /// Apply an out-block move; without cells the first valid move is used.
    Move {
        diagram: String,
        #[arg(num_args = 4, value_names = ["I", "J", "I2", "J2"])]
        cells: Vec<usize>,
    },
    Transpose {
        diagram: String,
        i: usize,
        j: usize,
    },
    Minimize {
        diagram: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyMode {
    General {
        n: usize,
        e: usize,
        /// Only sweep threshold graphs.
        #[arg(long)]
        threshold_only: bool,
    },
    Bipartite {
        l: usize,
        r: usize,
        e: usize,
    },
    /// Sweep the universe a graph file belongs to (`-` for stdin).
    File {
        #[arg(default_value = "-")]
        input: String,
    },
    Table18,
    Frontier {
        n: usize,
        e: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,1/4,1/2,1,2,4")]
        lambda: Vec<String>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct ReportPaths {
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Also write the CSV rows to this path.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

/// Process exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Usage = 1,
    Counterexample = 2,
    Budget = 3,
}

impl From<&Error> for Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Status::Budget,
            _ => Status::Usage,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                Status::Usage as u8
            } else {
                0
            });
        }
    };
    let status = match commands::run(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            Status::from(&e)
        }
    };
    ExitCode::from(status as u8)
}
