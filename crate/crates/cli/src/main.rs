mod commands;
mod instance;
mod output;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use functidom::domsolve::SolveBudget;
use functidom::Error;

use instance::{GraphArgs, MapArgs};
use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "functidom",
    version,
    about = "Domination numbers of functigraphs C(G, f)"
)]
struct Cli {
    /// Seed for sampled and random maps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact domination number of a graph or functigraph.
    Gamma(GammaArgs),
    /// Check a claim over a range of instances.
    Verify(VerifyArgs),
    /// Build an explicit dominating set.
    Construct(ConstructArgs),
    /// Run the acceptance suite and write every verdict to a file.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[command(flatten)]
    pub(crate) graph: GraphArgs,
    #[command(flatten)]
    pub(crate) map: MapArgs,
    /// Block count for --tilde; the base defaults to C_{3k}.
    #[arg(long)]
    pub(crate) k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Claim identifier, e.g. c5-exhaustive, ex2, realization.
    pub(crate) id: String,
    /// Cycle orders, as `5`, `3..6` or `4,7`.
    #[arg(long, value_name = "RANGE")]
    pub(crate) n: Option<String>,
    /// Values of k, same syntax.
    #[arg(long, value_name = "RANGE")]
    pub(crate) k: Option<String>,
    /// Star counts for realization, same syntax.
    #[arg(long, value_name = "RANGE")]
    pub(crate) a: Option<String>,
    /// Map family for per-map claims. Defaults to all maps for n <= 7 and
    /// a sample otherwise.
    #[arg(long, value_enum)]
    pub(crate) mode: Option<Mode>,
    /// Sample size for --mode sample.
    #[arg(long, default_value_t = 10_000)]
    pub(crate) count: u64,
    /// Sequence for lemma-ui, e.g. `1,5,6,10`.
    #[arg(long, value_name = "LIST")]
    pub(crate) values: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    All,
    Permutations,
    Sample,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Construction identifier, e.g. mod1, identity, max-degree.
    pub(crate) id: String,
    /// Cycle order.
    #[arg(long)]
    pub(crate) n: Option<usize>,
    #[command(flatten)]
    pub(crate) map: MapArgs,
    /// Block count for --tilde, or k for ex2.
    #[arg(long)]
    pub(crate) k: Option<usize>,
    /// Star count for realization.
    #[arg(long)]
    pub(crate) a: Option<usize>,
    /// Number of collapsed stars for realization.
    #[arg(long)]
    pub(crate) i: Option<usize>,
    /// First vertex of the distance pair (1-based).
    #[arg(long)]
    pub(crate) x: Option<usize>,
    /// Second vertex of the distance pair (1-based).
    #[arg(long)]
    pub(crate) y: Option<usize>,
    /// Residue class 1..=3 for avg-degree.
    #[arg(long)]
    pub(crate) class: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Output file.
    #[arg(long)]
    pub(crate) out: std::path::PathBuf,
    /// Criteria to run, e.g. `1..11` or `1,7`.
    #[arg(long, default_value = "1..11")]
    pub(crate) criteria: String,
}

pub struct RunConfig {
    pub output_format: Format,
    pub seed: u64,
    pub budget: SolveBudget,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
    /// Some verdicts failed; output was already written.
    Failed,
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 5,
            CliError::Core(e) => match e {
                Error::Parse { .. }
                | Error::InvalidParameter(_)
                | Error::UnsupportedSize { .. }
                | Error::Infeasible(_) => 2,
                Error::ResourceLimit { .. } => 3,
                Error::Precondition(_) => 4,
                Error::InvalidWitness { .. } => 1,
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Failed => write!(f, "some verdicts failed"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match SolveBudget::from_env() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        output_format: cli.format,
        seed: cli.seed,
        budget,
    };
    let result = match &cli.command {
        Command::Gamma(args) => commands::cmd_gamma(args, &cfg),
        Command::Verify(args) => commands::cmd_verify(args, &cfg),
        Command::Construct(args) => commands::cmd_construct(args, &cfg),
        Command::Report(args) => commands::cmd_report(args, &cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
