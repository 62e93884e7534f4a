//! `pathsum` command-line frontend.

mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "pathsum", version, about = "Sum-over-path numerics for quantum circuits, walks and Ising path integrals")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for path enumeration.
    #[arg(long, global = true, env = "PATHSUM_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Seed for random circuits.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Propagator elements of a circuit by path enumeration.
    Pathsum(commands::PathsumArgs),
    /// Deutsch's algorithm for one or all one-bit functions.
    Deutsch(commands::DeutschArgs),
    /// Grover amplitudes per iteration.
    Grover(commands::GroverArgs),
    /// Adiabatic schedules, gaps and QAOA.
    #[command(subcommand)]
    Anneal(commands::AnnealCommand),
    /// Classical and quantum walks.
    #[command(subcommand)]
    Walks(commands::WalksCommand),
    /// Transfer matrices, Trotter slicing and path integrals.
    #[command(subcommand)]
    Statmech(commands::StatmechCommand),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let table = match &cli.command {
        Command::Pathsum(a) => commands::pathsum(a, &cli.common)?,
        Command::Deutsch(a) => commands::deutsch(a)?,
        Command::Grover(a) => commands::grover(a)?,
        Command::Anneal(c) => commands::anneal(c)?,
        Command::Walks(c) => commands::walks(c)?,
        Command::Statmech(c) => commands::statmech(c)?,
    };
    let text = match cli.common.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &cli.common.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
