//! `pentagram-lab`: generate instances, iterate the maps, verify the collapse
//! theorems, print frieze tables and run the lifting checks.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 degenerate or non-generic
//! input, 3 usage error.

mod commands;
mod error;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use error::{CliError, Status};

#[derive(Parser, Debug)]
#[command(name = "pentagram-lab", version, about = "Exact experiments with pentagram-type maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    /// Axis-aligned 2n-gon in the plane.
    Pent2d,
    /// Axis-aligned mn-gon in R^m.
    Corrugated,
    /// Pair (infinity, B) of n-tuples in P^1.
    Lower,
    /// Mirror pair on the line y = -1.
    Mirror,
    /// Mirror pair in general position.
    MirrorFree,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    #[value(name = "T002")]
    T002,
    #[value(name = "T003")]
    T003,
    #[value(name = "T005")]
    T005,
    #[value(name = "T007")]
    T007,
    #[value(name = "T008")]
    T008,
    #[value(name = "L2-mating")]
    L2Mating,
    #[value(name = "L2-lifting")]
    L2Lifting,
    #[value(name = "L4-correspondence")]
    L4Correspondence,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftCheck {
    GeneralPosition,
    Centroid,
    Mating,
    FullySliced,
    CollapseLine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded random instance.
    Gen {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        range: i64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the orbit of an instance.
    Iterate {
        input: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Also write an SVG figure.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a theorem on one instance or on seeded random trials.
    Verify(commands::verify::VerifyArgs),
    /// Build the frieze pattern with the given first row.
    Frieze {
        /// Comma-separated first row, e.g. 7,5,-3.
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        /// Staggered layout.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the lifting checks on an instance.
    Lift {
        #[arg(long, value_enum)]
        check: LiftCheck,
        input: PathBuf,
        /// Seed for fallback random heights and the sampled mirror family.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check every family of an odd mirror pair.
        #[arg(long)]
        all_families: bool,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<Status, CliError> {
    match cli.command {
        Command::Gen { map, n, m, seed, range, out } => commands::gen::run(map, n, m, seed, range, out.as_deref()),
        Command::Iterate { input, steps, svg } => commands::iterate::run(&input, steps, svg.as_deref()),
        Command::Verify(args) => commands::verify::run(&args),
        Command::Frieze { a1, table, json } => commands::frieze::run(&a1, table, json),
        Command::Lift {
            check,
            input,
            seed,
            all_families,
            json,
        } => commands::lift::run(check, &input, seed, all_families, json),
    }
}

fn configure_threads() {
    if let Some(k) = std::env::var("PENTAGRAM_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if k > 0 {
            // Fails only if a global pool already exists, which cannot happen here.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
