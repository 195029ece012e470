use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dagiso::Phase2Mode;
use dagiso_cli::{run, Emit, RunConfig, Status};

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Backtrack,
    Failfast,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

/// Decide whether a set of conditional independence statements is
/// represented exactly by some DAG.
#[derive(Parser)]
#[command(name = "dagiso", version)]
struct Args {
    /// Statement file; standard input when omitted.
    input: Option<PathBuf>,
    /// Treat the file as a basis and close it under the semigraphoid axioms.
    #[arg(long)]
    basis: bool,
    #[arg(long, value_enum, default_value = "backtrack")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    emit: Format,
    /// Include the construction trace.
    #[arg(long)]
    trace: bool,
    /// Cross-check against brute force (at most 4 variables).
    #[arg(long)]
    check_oracle: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Status::InputError.code() as u8);
        }
    };
    let config = RunConfig {
        input: args.input,
        basis_mode: args.basis,
        phase2_mode: match args.mode {
            Mode::Backtrack => Phase2Mode::Backtrack,
            Mode::Failfast => Phase2Mode::FailFast,
        },
        emit: match args.emit {
            Format::Json => Emit::Json,
            Format::Dot => Emit::Dot,
            Format::Text => Emit::Text,
        },
        trace: args.trace,
        check_oracle: args.check_oracle,
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.artifact);
            ExitCode::from(out.status.code() as u8)
        }
        Err(e) => {
            eprintln!("dagiso: {e}");
            ExitCode::from(Status::InputError.code() as u8)
        }
    }
}
