//! Experiment runner CLI.
//!
//! `antclust run <config>` executes one simulation and writes its metrics
//! CSV and snapshots; `antclust compare <config>` sweeps every configured
//! variant over the same seeds and additionally writes the aggregate
//! comparison table. Flags override the corresponding config keys.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use antclust::config::{parse_config, Algorithm, ExperimentSpec};
use antclust::harness::{run_experiment, run_single, ExperimentSummary};

#[derive(Parser)]
#[command(
    name = "antclust",
    about = "Ant clustering simulation harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single run (the config's algorithm and seed).
    Run(JobArgs),
    /// Execute the paired variant comparison across all configured seeds.
    Compare(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Path to a `key = value` config file.
    config: PathBuf,
    /// Override the run seed (for compare: restrict to this single seed).
    #[arg(long)]
    seed: Option<u64>,
    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra snapshot iterations, comma-separated (initial and final
    /// states are always written).
    #[arg(long, value_delimiter = ',')]
    snapshots: Option<Vec<u64>>,
    /// Override the algorithm (for compare: restrict to this variant).
    #[arg(long)]
    variant: Option<String>,
}

impl JobArgs {
    fn load_spec(&self) -> anyhow::Result<ExperimentSpec> {
        let mut spec = parse_config(&self.config)
            .with_context(|| format!("invalid config {}", self.config.display()))?;
        if let Some(seed) = self.seed {
            spec.base.seed = seed;
            spec.seeds = vec![seed];
        }
        if let Some(out) = &self.out {
            spec.output_dir = out.clone();
        }
        if let Some(snapshots) = &self.snapshots {
            spec.snapshot_at = snapshots.clone();
        }
        if let Some(variant) = &self.variant {
            let algorithm: Algorithm = variant.parse().map_err(|e: String| anyhow::anyhow!(e))?;
            spec.base.algorithm = algorithm;
            spec.variants = vec![algorithm];
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let spec = args.load_spec()?;
            let summary = run_single(&spec)?;
            print_summary(&summary, &spec);
        }
        Command::Compare(args) => {
            let spec = args.load_spec()?;
            let summary = run_experiment(&spec)?;
            print_summary(&summary, &spec);
        }
    }
    Ok(())
}

fn print_summary(summary: &ExperimentSummary, spec: &ExperimentSpec) {
    for run in &summary.runs {
        let last = run.reports.last().expect("every run emits a final report");
        println!(
            "{} seed {}: {} clusters after {} iterations",
            run.variant.name(),
            run.seed,
            last.clusters_total,
            spec.base.max_iter
        );
    }
    println!(
        "wrote {} files to {}",
        summary.files.len(),
        spec.output_dir.display()
    );
}
