mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gt_core::GtError;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "gt", version, about = "Exact computations in the graded Goldman-Turaev Lie bialgebra")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Refuse truncation degrees above this value
    #[arg(long, global = true, env = "GT_MAX_DEGREE", default_value_t = 16)]
    max_degree: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args)]
pub struct Surface {
    /// Genus
    #[arg(long)]
    g: usize,
    /// Number of boundary components besides the outer one
    #[arg(long)]
    n: usize,
    /// Truncation degree
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Framing JSON file; the adapted framing if omitted
    #[arg(long)]
    framing: Option<PathBuf>,
}

/// A tangential derivation given as a JSON file or as `σ̂` of a necklace expression.
#[derive(Args)]
pub struct DerivationInput {
    /// Necklace expression such as "|x1 y1 z1|"
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    expr: Option<String>,
    /// JSON file with a generator-image table
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Goldman bracket of two necklace expressions
    Bracket {
        #[command(flatten)]
        surface: Surface,
        a: String,
        b: String,
    },
    /// Graded Turaev cobracket
    Cobracket {
        #[command(flatten)]
        surface: Surface,
        a: String,
    },
    /// The derivation σ̂ of a necklace expression
    Sigma {
        #[command(flatten)]
        surface: Surface,
        a: String,
    },
    /// The 𝟏 ∧ |A| component of the cobracket
    Es {
        #[command(flatten)]
        surface: Surface,
        a: String,
    },
    /// Lie bialgebra identities on all basis necklaces through the given degree
    Axioms {
        #[command(flatten)]
        surface: Surface,
    },
    /// Basis of the center through the given degree
    Center {
        #[command(flatten)]
        surface: Surface,
    },
    /// Divergence (genus zero)
    Div {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        input: DerivationInput,
    },
    /// Double divergence
    Tdiv {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        input: DerivationInput,
    },
    /// Framed double divergence
    Gdiv {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        input: DerivationInput,
    },
    /// The group cocycle j_q of exp(u)
    Jcocycle {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        input: DerivationInput,
    },
    /// Evaluate an expansion on a free-group word such as "a1 b1 A1 B1"
    Expansion {
        #[command(flatten)]
        surface: Surface,
        word: String,
        /// KV solution (report or automorphism JSON); the exponential expansion if omitted
        #[arg(long)]
        kv_solution: Option<PathBuf>,
    },
    /// Loop operations through a special expansion
    Loop {
        #[command(subcommand)]
        op: LoopOp,
    },
    /// Kashiwara-Vergne problems
    Kv {
        #[command(subcommand)]
        op: KvOp,
    },
}

#[derive(Args)]
pub struct ExpansionSource {
    /// KV solution (report or automorphism JSON); solved on the fly if omitted
    #[arg(long)]
    kv_solution: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LoopOp {
    /// Graded coordinates |log θ(w)|
    Log {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        source: ExpansionSource,
        word: String,
    },
    /// Graded coordinates of the Goldman bracket of two loops
    Bracket {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        source: ExpansionSource,
        a: String,
        b: String,
    },
    /// Graded coordinates of the framed Turaev cobracket of a loop
    Cobracket {
        #[command(flatten)]
        surface: Surface,
        #[command(flatten)]
        source: ExpansionSource,
        word: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Full,
    KviOnly,
}

#[derive(Subcommand)]
enum KvOp {
    /// Solve degree by degree and report a twist or an obstruction
    Solve {
        #[command(flatten)]
        surface: Surface,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        /// Seed for a random choice within each solution space
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a solution, or audit the certificate of an obstructed report
    Check {
        /// Report or automorphism JSON
        #[arg(long)]
        solution: PathBuf,
        /// Degree to check through (defaults to the report's)
        #[arg(long)]
        degree: Option<usize>,
        /// Framing JSON file (defaults to the report's, else adapted)
        #[arg(long)]
        framing: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Domain(#[from] GtError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Domain(
                GtError::Parse(_)
                | GtError::DegreeCap { .. }
                | GtError::InvalidSignature { .. }
                | GtError::GeneratorOutOfRange(_)
                | GtError::FramingMismatch(_),
            ) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
