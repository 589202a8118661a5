use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use primlink::cohomchk::{PrimeSelection, DEFAULT_MAX_DEGREE};
use primlink_cli::{analyze, default_cache_dir, liedims, snf, Format, Outcome, RunConfig};

#[derive(Parser)]
#[command(name = "primlink", version, about = "Degree-wise completeness checks for primitive link groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on a linking matrix and print the report.
    Analyze {
        /// JSON file {"components": d, "linking": [[...]]}
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// "auto" or a comma-separated list of primes
        #[arg(long, default_value = "auto")]
        primes: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// 1-based component whose relator is omitted (default: the last)
        #[arg(long = "drop")]
        drop: Option<usize>,
    },
    /// Compare Lyndon basis sizes with the necklace formula.
    Liedims {
        #[arg(short = 'd')]
        generators: usize,
        #[arg(short = 'k')]
        max_degree: usize,
    },
    /// Smith normal form of an integer matrix given as JSON.
    Snf {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn emit(outcome: Outcome) -> ExitCode {
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { file, max_degree, primes, format, drop } => match primes.parse::<PrimeSelection>() {
            Ok(primes) => analyze(&RunConfig {
                input: file,
                max_degree,
                primes,
                format,
                cache_dir: default_cache_dir(),
                dropped: drop,
            }),
            Err(e) => Outcome {
                code: primlink_cli::exit::INPUT_ERROR,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        },
        Command::Liedims { generators, max_degree } => liedims(generators, max_degree),
        Command::Snf { file, format } => snf(&file, format),
    };
    emit(outcome)
}
