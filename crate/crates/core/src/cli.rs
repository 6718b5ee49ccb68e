//! Command-line front end. Parses flags, resolves the config and dispatches
//! to the runners in [`crate::report`].
//!
//! Exit codes: 0 success, 2 config error, 3 infeasible scenario, 4 I/O
//! error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::ScenarioConfig;
use crate::error::Error;
use crate::link_budget::PathLossModel;
use crate::report::{run, RunCommand};

#[derive(Parser)]
#[command(
    name = "leolink",
    version,
    about = "Link-level simulator for NB-IoT service from a LEO satellite"
)]
struct Cli {
    /// Flat key-value config file with dotted section keys.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory for CSVs and the run manifest.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Random seed of the run.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Peak pass elevations to sweep, deg.
    #[arg(long = "alpha-max", global = true, value_name = "LIST", value_delimiter = ',')]
    alpha_max: Option<Vec<f64>>,
    /// Path-loss law.
    #[arg(long, global = true, value_enum, value_name = "MODEL")]
    pathloss: Option<PathLossArg>,
    /// Directory with table override CSVs.
    #[arg(long, global = true, value_name = "DIR")]
    tables: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum PathLossArg {
    /// Free-space loss at the carrier frequency.
    FreeSpace,
    /// Bare 10*n*log10(d) power law (comparison mode).
    PaperExponent,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Elevation, nadir angle and slant range over the pass.
    Geometry,
    /// Carrier offset and offset rate over the pass.
    Doppler,
    /// Propagation delay and delay rate over the pass.
    Delay,
    /// Satellite antenna gain versus nadir angle.
    AntennaMap,
    /// Downlink and per-bandwidth uplink SNR over the pass.
    LinkBudget,
    /// Achievable downlink rate over the pass.
    PhyRate,
    /// Synchronization windows over the pass.
    SyncWindows,
    /// Preamble repetition requirements over the pass.
    Rach,
    /// Pre-compensation command schedule and residual report.
    Compensation,
    /// Paging-mode plan across coverage gaps.
    Coverage,
    /// Fading-tap power statistics and K-factor estimates.
    FadingStats,
    /// Everything above in one run.
    Report,
}

impl From<Command> for RunCommand {
    fn from(cmd: Command) -> Self {
        match cmd {
            Command::Geometry => RunCommand::Geometry,
            Command::Doppler => RunCommand::Doppler,
            Command::Delay => RunCommand::Delay,
            Command::AntennaMap => RunCommand::AntennaMap,
            Command::LinkBudget => RunCommand::LinkBudget,
            Command::PhyRate => RunCommand::PhyRate,
            Command::SyncWindows => RunCommand::SyncWindows,
            Command::Rach => RunCommand::Rach,
            Command::Compensation => RunCommand::Compensation,
            Command::Coverage => RunCommand::Coverage,
            Command::FadingStats => RunCommand::FadingStats,
            Command::Report => RunCommand::Report,
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::TableFormat { .. } => 2,
        Error::Io { .. } => 4,
        _ => 3,
    }
}

fn resolve_config(cli: &Cli) -> Result<ScenarioConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            ScenarioConfig::parse(&text)?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(alphas) = &cli.alpha_max {
        cfg.max_elevation_deg = alphas.clone();
    }
    if let Some(model) = cli.pathloss {
        cfg.link.pathloss_model = match model {
            PathLossArg::FreeSpace => PathLossModel::FreeSpace,
            PathLossArg::PaperExponent => PathLossModel::ExponentOnly,
        };
    }
    if let Some(tables) = &cli.tables {
        cfg.tables_dir = Some(tables.clone());
    }
    Ok(cfg)
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    match run(cli.command.into(), &cfg) {
        Ok(files) => {
            println!("wrote {} files to {}", files.len(), cfg.out_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
