//! `qlink` — link budget simulator and design tool for coherent microwave
//! transmission over a room-temperature waveguide with a cryogenic
//! loop-antenna/LC detector.
//!
//! Exit codes: 0 success, 2 configuration error, 3 physics error,
//! 4 infeasible design, 5 statistical verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qlink_cli::{commands, config, CliError};

#[derive(Parser)]
#[command(
    name = "qlink",
    version,
    about = "Photon-number link budget of a room-temperature microwave waveguide \
             with a cryogenic loop-antenna/LC detector"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration (strict TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override a config value by dotted path, e.g. --set waveguide.length_l=35.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Write the result here (overrides output.path from the config).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the full chain at the configured scenario point.
    LinkBudget(RunArgs),
    /// Sweep one variable and tabulate the chain at every grid point.
    Sweep(RunArgs),
    /// Solve for antenna dimensions or the maximum feasible length.
    DesignAntenna(RunArgs),
    /// Verify the transport law against the stochastic ensemble.
    McVerify(RunArgs),
}

fn load(args: &RunArgs) -> Result<config::ScenarioConfig, CliError> {
    let mut cfg = config::load_config(&args.config, &args.set)?;
    if let Some(path) = &args.output {
        let output = cfg.output.get_or_insert_with(Default::default);
        output.path = Some(path.display().to_string());
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::LinkBudget(args) => commands::link_budget(&load(args)?),
        Command::Sweep(args) => commands::sweep(&load(args)?),
        Command::DesignAntenna(args) => commands::design_antenna(&load(args)?),
        Command::McVerify(args) => commands::mc_verify(&load(args)?),
    }
}

fn main() -> ExitCode {
    // QLINK_THREADS caps the worker pool; results never depend on it.
    if let Ok(threads) = std::env::var("QLINK_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
