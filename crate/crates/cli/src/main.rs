use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use equigap_cli::commands;
use equigap_cli::config::{
    self, GapSweepConfig, NnTrainConfig, OraclesConfig, RademacherConfig, SymmetrizerConfig,
    VerifyGroupConfig,
};

/// Averaging operators and generalisation-gap experiments for compact
/// groups acting orthogonally on real vector spaces.
#[derive(Parser)]
#[command(name = "equigap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// TOML configuration file
    config: PathBuf,
    /// Override the config's seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's trial count
    #[arg(long)]
    trials: Option<usize>,
    /// Override the config's output path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check group axioms and representation defects
    VerifyGroup(CommonArgs),
    /// Build and export the intertwiner projection tensor
    Symmetrizer(CommonArgs),
    /// Empirical vs predicted generalisation gap over sample counts
    GapSweep(CommonArgs),
    /// Pseudo-inverse Wishart and projection-moment oracles
    Oracles(CommonArgs),
    /// Train a small network in projected/regularised/plain mode
    NnTrain(CommonArgs),
    /// Rademacher complexity sandwich for feature-averaged linear classes
    Rademacher(CommonArgs),
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::VerifyGroup(args) => {
            let cfg: VerifyGroupConfig = config::load(&args.config)?;
            commands::verify_group::run(&cfg)
        }
        Command::Symmetrizer(args) => {
            let mut cfg: SymmetrizerConfig = config::load(&args.config)?;
            if let Some(out) = args.out {
                cfg.out = out;
            }
            commands::symmetrizer::run(&cfg)
        }
        Command::GapSweep(args) => {
            let mut cfg: GapSweepConfig = config::load(&args.config)?;
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(trials) = args.trials {
                cfg.trials = trials;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            commands::gap_sweep::run(&cfg)
        }
        Command::Oracles(args) => {
            let mut cfg: OraclesConfig = config::load(&args.config)?;
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(trials) = args.trials {
                cfg.trials = trials;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            commands::oracles::run(&cfg)
        }
        Command::NnTrain(args) => {
            let mut cfg: NnTrainConfig = config::load(&args.config)?;
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            commands::nn_train::run(&cfg)
        }
        Command::Rademacher(args) => {
            let mut cfg: RademacherConfig = config::load(&args.config)?;
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            if let Some(out) = args.out {
                cfg.out = out;
            }
            commands::rademacher::run(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
