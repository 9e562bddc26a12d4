use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod error;

use commands::Context;
use config::{RunConfig, DEFAULT_OUT, DEFAULT_SEED};
use error::CliError;

/// Suction-cup tactile sensing toolkit.
#[derive(Debug, Parser)]
#[command(name = "sucker", version)]
struct Cli {
    /// Master seed; overrides the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory; overrides the config file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Attachment force over a cavity pressure sweep.
    ModelCurve,
    /// Lip contours, conformity demand and microhole layouts.
    Lip,
    /// Masked texture difference images and a manifest.
    Dataset,
    /// Train and test the texture classifier on a dataset directory.
    ClassifyEval {
        /// Directory written by `dataset`; defaults to the output directory.
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Sandpaper difference images, spectra and roughness indices.
    Roughness,
    /// Crawl, steer and grasp plans plus a crawl pressure timeline.
    Gait,
    /// Reactive locomotion episode on a grid world.
    Locomotion {
        /// World file; falls back to the config, then the bundled demo world.
        #[arg(long)]
        world: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let ctx = Context {
        seed: cli.seed.or(config.seed).unwrap_or(DEFAULT_SEED),
        out: cli
            .out
            .or_else(|| config.out.clone())
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        config,
    };
    match &cli.command {
        Command::ModelCurve => commands::model_curve(&ctx),
        Command::Lip => commands::lip(&ctx),
        Command::Dataset => commands::dataset(&ctx),
        Command::ClassifyEval { dataset } => {
            let dir = dataset.clone().unwrap_or_else(|| ctx.out.clone());
            commands::classify_eval(&ctx, &dir)
        }
        Command::Roughness => commands::roughness(&ctx),
        Command::Gait => commands::gait(&ctx),
        Command::Locomotion { world } => commands::locomotion(&ctx, world.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
