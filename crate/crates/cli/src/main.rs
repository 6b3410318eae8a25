//! `splitgeom` batch driver.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or configuration errors. `SPLITGEOM_THREADS` caps the worker pool.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Status;
use config::{config_error, AlgebraOpts, ConfigError, FlatOpts, RunOpts, SasakianOpts, ScanOpts};

#[derive(Parser)]
#[command(name = "splitgeom", version, about = "Split-quaternion geometry verification and Nahm-Schmid runs")]
struct Cli {
    /// TOML file with one table per subcommand; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Randomised invariant suite for the split quaternions and Bⁿ.
    VerifyAlgebra {
        #[command(flatten)]
        opts: AlgebraOpts,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Per-point ρ₀ and ρ₂ on the spacelike cone of B^(n+1).
    FlatObstruction(FlatOpts),
    /// Split 3-Sasakian checks on the unit pseudo-sphere of B^(n+1).
    VerifySasakian(SasakianOpts),
    /// Nahm-Schmid equations.
    #[command(subcommand)]
    Nahm(NahmCommand),
}

#[derive(Subcommand)]
enum NahmCommand {
    /// Integrate from initial data and write the trajectory.
    Run(RunOpts),
    /// Scan a one-parameter family for degenerate solutions.
    DegeneracyScan(ScanOpts),
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("SPLITGEOM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| config_error(format!("SPLITGEOM_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<Status> {
    init_threads()?;
    let file = config::load(cli.config.as_deref())?;
    match cli.command {
        Command::VerifyAlgebra { opts, inject_fault } => {
            commands::algebra::run(opts.or(file.verify_algebra), inject_fault)
        }
        Command::FlatObstruction(o) => commands::flat::run(o.or(file.flat_obstruction)),
        Command::VerifySasakian(o) => commands::sasakian::run(o.or(file.verify_sasakian)),
        Command::Nahm(NahmCommand::Run(o)) => commands::nahm::run(o.or(file.nahm.run)),
        Command::Nahm(NahmCommand::DegeneracyScan(o)) => {
            commands::nahm::degeneracy_scan(o.or(file.nahm.degeneracy_scan))
        }
    }
}

/// Numerical breakdowns count as check failures, everything else as usage.
fn error_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<splitgeom::Error>() {
        Some(
            splitgeom::Error::IntegrationBlowup { .. }
            | splitgeom::Error::DegenerateBasis { .. }
            | splitgeom::Error::Calibration { .. }
            | splitgeom::Error::NullDivisor(_)
            | splitgeom::Error::NullDirection(_),
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
