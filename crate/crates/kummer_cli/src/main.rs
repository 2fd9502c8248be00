//! `kummer-rr`: assumption screening, seed certification, single-triple runs,
//! batch table reproduction and orbit tables.

mod batch;
mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "kummer-rr",
    version,
    about = "Kummer-generator checks for (p, ℓ₀, ℓ₁)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the triples with ℓ₀ ≤ ELL0_MAX and ℓ₁ ≤ ELL1_MAX that pass the assumption screen.
    Screen {
        p: u64,
        ell0_max: u64,
        ell1_max: u64,
    },
    /// Certify a seed-data file.
    Certify {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Certify a seed-data file and run the pipeline on it.
    Run {
        /// Optional triple `p,ℓ₀,ℓ₁`, checked against the seed parameters.
        #[arg(value_parser = commands::parse_triple)]
        triple: Option<kummer_rr::fparith::TripleParams>,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Run every triple listed in a batch file (`p ℓ₀ ℓ₁ [seed path]` per line).
    Batch {
        file: PathBuf,
        /// Directory searched for `p{p}_l{ℓ₀}_l{ℓ₁}.json` when a line names no seed.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Borel orbits on lines and planes of trace-zero matrices over F_p.
    Orbits { p: u64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Screen {
            p,
            ell0_max,
            ell1_max,
        } => commands::screen(p, ell0_max, ell1_max, cli.format),
        Command::Certify { data, trials } => commands::certify(&data, trials as usize, cli.format),
        Command::Run {
            triple,
            data,
            trials,
        } => commands::run(triple, data.as_deref(), trials as usize, cli.format),
        Command::Batch {
            file,
            data,
            trials,
            jobs,
        } => batch::batch(&file, data.as_deref(), trials as usize, jobs, cli.format),
        Command::Orbits { p } => commands::orbits(p, cli.format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
