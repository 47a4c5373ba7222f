mod commands;
mod config;
mod error;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::error::{CliError, CliResult};

/// Steady states, trajectories, EROI and growth-invariant checks for the
/// energy-extended Solow-Swan model.
#[derive(Debug, Parser)]
#[command(name = "solow-energy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Steady states with stability and EROI.
    Steady(RunArgs),
    /// Energy trajectories for a list of initial energies.
    Simulate(RunArgs),
    /// Energy growth, depreciation and net energy gain over an E grid.
    EnergyReport(RunArgs),
    /// Where EROI exceeds the threshold `r`.
    Eroi(RunArgs),
    /// Exponential and logistic fits of K, L, Y.
    Fit(RunArgs),
    /// Drift of the growth invariant along closed-form trajectories.
    InvariantCheck(RunArgs),
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// Flat TOML file of parameters.
    #[arg(long)]
    config: PathBuf,
    /// Directory for output files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override a config entry; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
}

type Action = fn(&Config, &Path) -> CliResult<()>;

fn run(command: Command) -> CliResult<()> {
    let (args, action): (&RunArgs, Action) = match &command {
        Command::Steady(a) => (a, commands::steady),
        Command::Simulate(a) => (a, commands::simulate_cmd),
        Command::EnergyReport(a) => (a, commands::energy_report),
        Command::Eroi(a) => (a, commands::eroi_cmd),
        Command::Fit(a) => (a, commands::fit),
        Command::InvariantCheck(a) => (a, commands::invariant_check),
    };
    let config = Config::load(&args.config, &args.params)?;
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    action(&config, &args.out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
