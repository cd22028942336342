//! Command-line front door for the logsmooth kernel.
//!
//! Every verb reads a JSON input file, dispatches to the library, and prints
//! either a human-readable report or (`--json`) a machine-readable one with
//! sorted keys.  Exit status: `0` for affirmative verdicts and successful
//! computations, `1` for negative verdicts (the report carries a witness),
//! `2` for input errors.

mod commands;
mod io;
mod reports;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "logsmooth",
    version,
    about = "Exact log-smoothness and semistability checks on monoid charts"
)]
struct Cli {
    /// Emit a machine-readable JSON report with sorted keys.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix.
    Snf { file: PathBuf },
    /// Decide whether an element belongs to a monoid.
    Member {
        /// Coordinates of the element, e.g. "1,2" or "[1, 2]".
        #[arg(long, value_name = "COORDS")]
        element: String,
        file: PathBuf,
    },
    /// Saturate a monoid, or test saturatedness inside a container monoid.
    Saturate {
        /// Container monoid file: test saturatedness of FILE inside it.
        #[arg(long = "in", value_name = "CONTAINER")]
        container: Option<PathBuf>,
        file: PathBuf,
    },
    /// Hilbert basis of the cone spanned by a monoid's generators.
    Hilbert { file: PathBuf },
    /// Log smoothness of a monoid homomorphism at a characteristic.
    CheckSmooth {
        /// Characteristic to test at; 0 means characteristic zero.
        #[arg(long = "char", value_name = "P", default_value_t = 0)]
        characteristic: u64,
        file: PathBuf,
    },
    /// Differential invariants (rank and torsion) of a homomorphism.
    Omega { file: PathBuf },
    /// Amalgamated sum of two homomorphisms out of a shared monoid.
    Pushout { file: PathBuf },
    /// Saturated fiber-product chart of two homomorphisms.
    Fsfiber { file: PathBuf },
    /// Cocycle tests on a cover of normal crossing charts.
    Dss {
        #[command(subcommand)]
        action: DssAction,
    },
}

#[derive(Subcommand)]
enum DssAction {
    /// Validate a cover and test its cocycle conditions.
    Check {
        /// Pairwise test: exact unit products, or products modulo the
        /// double-locus ideal.
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
        /// Also verify the stored triple-overlap compositions.
        #[arg(long)]
        triples: bool,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[value(name = "strict")]
    Strict,
    #[value(name = "mod-d")]
    ModD,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Snf { file } => commands::snf(file),
        Command::Member { element, file } => commands::member(element, file),
        Command::Saturate { container, file } => {
            commands::saturate(file, container.as_deref())
        }
        Command::Hilbert { file } => commands::hilbert(file),
        Command::CheckSmooth {
            characteristic,
            file,
        } => commands::check_smooth(*characteristic, file),
        Command::Omega { file } => commands::omega(file),
        Command::Pushout { file } => commands::pushout(file),
        Command::Fsfiber { file } => commands::fsfiber(file),
        Command::Dss {
            action: DssAction::Check {
                mode,
                triples,
                file,
            },
        } => commands::dss_check(file, *mode, *triples),
    };
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json_pretty());
            } else {
                print!("{}", out.human);
            }
            if out.affirmative {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
