//! `pgx`: command-line front end for partial groups and their extensions.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pgx_core::ErrorKind;

#[derive(Parser)]
#[command(name = "pgx", version, about = "Partial groups, extensions and their cohomology")]
struct Cli {
    /// Truncation level; defaults to the file's own level, then PGX_LEVEL, then 6.
    #[arg(long, global = true)]
    level: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the partial group axioms up to the level.
    Validate { pg: PathBuf },
    /// Domain census, normalizer, centre, automorphisms and the π-report.
    Info { pg: PathBuf },
    /// Bar construction of a group table.
    Bar {
        #[arg(long)]
        group: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Twisted product of a fiber and a base along a twisting pair.
    Extend {
        #[arg(long)]
        fiber: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        pair: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Semidirect product for an action of the base on the fiber.
    Semidirect {
        #[arg(long)]
        fiber: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Obstruction, H² and one extension per class for an outer action.
    Classify {
        #[arg(long)]
        fiber: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        /// Write each class as `class-<i>.ext` into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Cohomology of the base with coefficients in the centre of a fiber.
    Cohomology {
        #[arg(long)]
        base: PathBuf,
        #[arg(long = "coeff-from")]
        coeff_from: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        deg: usize,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Sections of an extension.
    Sections {
        ext: PathBuf,
        /// Group sections into homotopy classes and compare with H¹.
        #[arg(long)]
        classes: bool,
    },
    /// Search for an equivalence between two extensions.
    Equiv { first: PathBuf, second: PathBuf },
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Parse => 2,
        ErrorKind::Validation => 3,
        ErrorKind::Resource => 4,
        ErrorKind::Structural => 5,
        ErrorKind::Internal => 70,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.level) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(err) => {
                    eprintln!("pgx: {err}");
                    ExitCode::from(exit_code(err.kind()))
                }
            }
        }
        Err(err) => {
            eprintln!("pgx: {err}");
            ExitCode::from(exit_code(err.kind()))
        }
    }
}
