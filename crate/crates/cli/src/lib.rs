//! Command-line front end for `fairdiv-core`.
//!
//! Exit codes: 0 success or criterion satisfied, 1 definitive negative
//! answer, 2 usage or input error, 3 a proven guarantee failed.

mod commands;
pub mod demos;
mod error;
pub mod io;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "fairdiv",
    version,
    about = "Fair division of indivisible items with arbitrary set-function utilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an allocation against a fairness criterion.
    Check(CheckArgs),
    /// Run an allocation procedure.
    Solve(SolveArgs),
    /// Exhaustively search all allocations.
    Search(SearchArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Run a built-in worked example against its expected outcome.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub allocation: PathBuf,
    /// ef, ef1, efx-zero-zero, efx-zero-minus, efx-plus-zero, efx-plus-minus
    #[arg(long)]
    pub criterion: String,
    /// Report every failing pair instead of the first.
    #[arg(long)]
    pub all_witnesses: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// ef1-two, efx-chores, cut-choose, boolean, neg-boolean, aziz-ref
    #[arg(long)]
    pub algorithm: String,
    /// Item order for ef1-two and aziz-ref, e.g. 3,1,2.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    /// Emit the trace as JSON lines, to FILE or to stdout before the report.
    #[arg(long, num_args = 0..=1, value_name = "FILE")]
    pub trace: Option<Option<PathBuf>>,
    /// Write the allocation file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub criterion: String,
    /// first, all or count.
    #[arg(long, default_value = "count")]
    pub mode: String,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Visit one allocation per relabeling of bundles (identical utilities only).
    #[arg(long)]
    pub symmetry: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// general, chores, goods, additive, boolean, negative-boolean
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub agents: usize,
    #[arg(long)]
    pub items: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub identical: bool,
    #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
    pub min: i64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub max: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub json: bool,
}

/// What a command printed and how it wants to exit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::Solve(a) => commands::solve(a),
        Command::Search(a) => commands::search(a),
        Command::Gen(a) => commands::gen(a),
        Command::Demo(a) => commands::demo(a),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}
