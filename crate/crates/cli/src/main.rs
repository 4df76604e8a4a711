use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zcl_cli::commands::{self, Format};
use zcl_cli::verify::Level;
use zcl_cli::Outcome;
use zcl_core::Nat;

/// Zero-divisor cup-length bounds for TC_k of real projective space.
#[derive(Parser)]
#[command(name = "zcl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// zcl_k(P^n) with deficit, excess, witness and sharpness flag.
    Compute {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: Nat,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Reproduce the zcl_k(n) table for 1 <= n <= 17, 2 <= k <= 8.
    Table1,
    /// Reproduce the reference s(n) values.
    Table2,
    /// Check the piecewise form of zcl_k(P^102) for 2 <= k <= 10.
    Example102,
    /// Cross-check formulas, recursions and oracles over a range.
    Verify {
        #[arg(long, default_value_t = 4096)]
        n_max: u64,
        #[arg(long, default_value_t = 16)]
        k_max: u64,
        #[arg(long, value_enum, default_value_t = Level::Formulas)]
        level: Level,
    },
    /// Compare zcl_3(P^n) + 1 against a local b-file.
    Oeis {
        #[arg(long)]
        file: PathBuf,
        /// Sequence offset: entry index i is compared at n = i - offset.
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<i64>,
    },
    /// CSV of s(n), sharpness threshold and run-length bound for 0 <= n <= n-max.
    Scan {
        #[arg(long)]
        n_max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Outcome = match cli.command {
        Command::Compute { k, n, format } => commands::compute(k, &n, format),
        Command::Table1 => commands::table1(),
        Command::Table2 => commands::table2(),
        Command::Example102 => commands::example102(),
        Command::Verify {
            n_max,
            k_max,
            level,
        } => commands::verify(n_max, k_max, level),
        Command::Oeis { file, offset } => commands::oeis(&file, offset),
        Command::Scan { n_max } => commands::scan(n_max),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status.code())
}
