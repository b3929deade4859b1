use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};

use proxsplit::experiments::{run_experiment, write_artifacts, ExperimentConfig};
use proxsplit::solver::Qualification;

#[derive(Parser)]
#[command(
    name = "proxsplit",
    about = "Constrained signal and image recovery by parallel proximal splitting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config and write its outputs.
    Run {
        /// Experiment configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Override the config's RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Drop the total-variation potentials (experiment 2 ablation).
        #[arg(long)]
        no_tv: bool,
        /// Drop the l1 potential (experiment 2 ablation).
        #[arg(long)]
        no_l1: bool,
    },
    /// Print a preset config for experiment 1, 2 or 3.
    Preset {
        /// Experiment id.
        #[arg(long)]
        experiment: u8,
    },
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            seed,
            no_tv,
            no_l1,
        } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading config {}", config.display()))?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if no_tv {
                cfg.ablate_tv = true;
            }
            if no_l1 {
                cfg.ablate_l1 = true;
            }
            let artifacts = run_experiment(&cfg)?;
            write_artifacts(&out, &artifacts)?;

            match &artifacts.qualification {
                Qualification::Satisfied { reason } => {
                    eprintln!("qualification: satisfied ({reason})");
                }
                Qualification::Unknown { condition } => {
                    eprintln!("qualification: unknown ({condition})");
                }
            }
            println!("{}", artifacts.metrics.to_json());
            Ok(())
        }
        Command::Preset { experiment } => {
            let cfg = match experiment {
                1 => ExperimentConfig::exp1_desk(),
                2 => ExperimentConfig::exp2_desk(),
                3 => ExperimentConfig::exp3_full(),
                other => anyhow::bail!("unknown experiment {other}"),
            };
            println!("{}", serde_json::to_string_pretty(&cfg)?);
            Ok(())
        }
    }
}
