use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use toric_cox_cli::{parse_degree, run, Command};

#[derive(Parser)]
#[command(
    name = "toric-cox",
    version,
    about = "Cox rings and Euler modules of smooth complete toric varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a fan file: simplicial, smooth, complete.
    Validate { file: PathBuf },
    /// Class group, degrees, effective cone, kappa and irrelevant ideal.
    Cox { file: PathBuf },
    /// Euler module rank, basis degrees and a graded piece.
    Euler {
        file: PathBuf,
        /// Class-group degree, comma separated (default: anticanonical).
        #[arg(long, value_parser = degree_arg, allow_hyphen_values = true)]
        degree: Option<Degree>,
    },
    /// Rebuild a fan from a grading file {"Q": [[...]], "w": [...]}.
    Reconstruct { file: PathBuf },
    /// Run every check on one fan.
    Verify { file: PathBuf },
}

#[derive(Clone)]
struct Degree(Vec<i64>);

fn degree_arg(s: &str) -> Result<Degree, String> {
    parse_degree(s).map(Degree)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, file, degree) = match cli.command {
        Cmd::Validate { file } => (Command::Validate, file, None),
        Cmd::Cox { file } => (Command::Cox, file, None),
        Cmd::Euler { file, degree } => (Command::Euler, file, degree.map(|d| d.0)),
        Cmd::Reconstruct { file } => (Command::Reconstruct, file, None),
        Cmd::Verify { file } => (Command::Verify, file, None),
    };
    let report = run(command, &file, degree.as_deref());
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
