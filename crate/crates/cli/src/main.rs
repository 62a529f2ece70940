//! `cdhilbert`: multiplication tables, identity verification, module
//! decomposition and Parseval reports, all in exact arithmetic.
//!
//! Exit codes: 0 holds, 1 verified false, 2 input error, 3 internal error.

mod commands;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use cdhilbert::config::DEFAULT_SEED;
use cdhilbert::Error;
use clap::{Parser, Subcommand};

use commands::Outcome;

#[derive(Parser)]
#[command(name = "cdhilbert", version, about = "Exact octonionic Hilbert space computations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every pseudo-random sample.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signed basis product table of a Cayley-Dickson algebra.
    MultTable {
        #[arg(long, default_value_t = 3)]
        level: u32,
        /// Half-open index range `START..END` for rows and columns.
        #[arg(long, value_parser = parse_range)]
        range: Option<(usize, usize)>,
    },
    /// Check the inner-product identities and axioms on random samples.
    Verify {
        /// Builtin name (`O`, `Obar`, `O^a+Obar^b`, `sedenion`, `A4`..`A8`) or module JSON path.
        module: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Split a module into regular and conjugate octonion summands.
    Decompose { module: String },
    /// Bessel identity terms for a vector against an orthonormal system.
    Parseval {
        module: String,
        /// `random`, a tuple like `(1,e3)`, or an element literal.
        #[arg(long, default_value = "random")]
        x: String,
        /// `example-4.3`, `x4x5`, `standard` or `canonical`.
        #[arg(long, default_value = "canonical")]
        basis: String,
    },
    /// Fourier coefficients of a vector in a maximal orthonormal system.
    Expand {
        module: String,
        #[arg(long, default_value = "random")]
        x: String,
        #[arg(long, default_value = "canonical")]
        basis: String,
    },
    /// Bases of the nucleus and the conjugate nucleus.
    Nucleus { module: String },
    /// Search for a pair of nonzero elements with zero product.
    ZeroDivisor {
        #[arg(long, default_value_t = 4)]
        level: u32,
    },
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text.split_once("..").ok_or("expected START..END")?;
    let a = a.parse().map_err(|_| format!("bad start {a:?}"))?;
    let b = b.parse().map_err(|_| format!("bad end {b:?}"))?;
    Ok((a, b))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::MultTable { level, range } => commands::mult_table(*level, *range),
        Command::Verify { module, samples } => commands::verify(module, *samples, cli.seed),
        Command::Decompose { module } => commands::decompose(module),
        Command::Parseval { module, x, basis } => commands::parseval(module, x, basis, cli.seed),
        Command::Expand { module, x, basis } => commands::expand(module, x, basis, cli.seed),
        Command::Nucleus { module } => commands::nucleus(module),
        Command::ZeroDivisor { level } => commands::zero_divisor(*level),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::Internal(_) | Error::Singular => 3,
                _ => 2,
            });
        }
    };
    let rendered = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.json).expect("json values serialize");
        s.push('\n');
        s
    } else {
        outcome.text
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.code)
}
