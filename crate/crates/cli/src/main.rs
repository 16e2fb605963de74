//! `genus2`: command-line front end for the genus2 library.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status for a result that contradicts the dimension or count tables.
pub const EXIT_VIOLATION: u8 = 2;
/// Exit status for usage, input and runtime errors.
pub const EXIT_ERROR: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "genus2", version, about = "Invariants, automorphisms and Ekedahl-Oort types of genus-2 curves over F_q")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Characteristic of the base field (odd prime).
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Extension degree k of the base field F_{p^k}.
    #[arg(long, global = true, default_value_t = 1)]
    pub ext: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Output file (a directory root for `census`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for census sweeps.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Grid-point budget for census sweeps; GENUS2_BUDGET takes precedence.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct CurveInput {
    /// Coefficients of f in y^2 + g y = f, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Coefficients of g, constant term first (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// JSON file holding a curve, or any output of this tool that contains one.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Use a random smooth curve drawn with --seed.
    #[arg(long)]
    pub random: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelStratum {
    D4,
    D6,
    #[value(name = "d6-omega")]
    D6Omega,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Tables,
    Counts,
    Superspecial,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Igusa invariants of a curve.
    Invariants(CurveInput),
    /// EO type, automorphism group and strata of a curve.
    Classify {
        #[command(flatten)]
        curve: CurveInput,
        /// Only the Hasse-Witt matrix and EO type.
        #[arg(long)]
        eo: bool,
        /// Only the automorphism label and reduced order.
        #[arg(long)]
        aut: bool,
    },
    /// A curve with the given Igusa point on the D4 or D6 stratum.
    Model {
        #[arg(long, value_enum)]
        stratum: ModelStratum,
        /// J2,J4,J6,J8,J10.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// JSON file holding an Igusa point, or any output of this tool that contains one.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// The genus-2 curve glued from the Legendre curves E_{l1}, E_{l2}.
    Glue {
        #[arg(long, allow_hyphen_values = true)]
        l1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l2: Option<String>,
        /// JSON output of a previous `glue`.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Stratum dimensions and component counts at p.
    Count {
        /// JSON output of a previous `count`, re-evaluated at its prime.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Exhaustive normal-form census over F_{p^k}.
    Census {
        /// EO filter: all, or a type such as (0,2).
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Compare census output with the tables.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyMode::Tables)]
        mode: VerifyMode,
        /// Extension degrees swept by `--mode tables`.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        ks: Vec<usize>,
        /// A report, count table, census summary or census CSV written earlier, checked again.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome),
        Err(e) => {
            eprintln!("error: {e}");
            // A non-integral count formula contradicts the tables rather than the input.
            let code = if matches!(e, genus2::Error::NonIntegral { .. }) { EXIT_VIOLATION } else { EXIT_ERROR };
            ExitCode::from(code)
        }
    }
}
