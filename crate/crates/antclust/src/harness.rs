//! Experiment runner: executes (variant, seed) sweeps, writes per-run
//! metric CSVs, text snapshots, and the aggregate comparison table.
//!
//! Runs are computed in parallel (they share nothing), then all files are
//! written sequentially in variant-major, seed-minor order, so output is
//! byte-identical to a sequential execution of the same spec.
//!
//! File layout under the output directory:
//!   `{variant}_seed{seed}.csv`          per-run cluster metrics
//!   `{variant}_seed{seed}_t{iter}.txt`  grid snapshot at an iteration
//!   `{variant}_seed{seed}_t{iter}.ants` companion ant listing
//!   `comparison.csv`                    aggregate across seeds (compare)
//!
//! Per-run CSV columns: `iteration,clusters_total,clusters_red,
//! clusters_blue,largest_cluster,carried_count` (for type counts other
//! than two, one `clusters_type{i}` column per type). Aggregate columns:
//! `variant,iteration,mean_clusters,sd_clusters,n_seeds`, means and
//! sample standard deviations of `clusters_total` over seeds, printed
//! with four decimals.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{Algorithm, ConfigError, ExperimentSpec, SimConfig};
use crate::engine::{self, RunOutput};
use crate::metrics::ClusterReport;
use crate::snapshot::{self, SnapshotError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Metrics of one completed run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub variant: Algorithm,
    pub seed: u64,
    pub reports: Vec<ClusterReport>,
}

/// Everything a harness invocation produced, for tests and callers.
#[derive(Clone, Debug)]
pub struct ExperimentSummary {
    pub runs: Vec<RunRecord>,
    pub files: Vec<PathBuf>,
}

/// Executes a single run using the spec's base algorithm and seed, and
/// writes its CSV and snapshots. No aggregate table is produced.
pub fn run_single(spec: &ExperimentSpec) -> Result<ExperimentSummary, HarnessError> {
    spec.validate()?;
    let out = engine::run(&spec.base, &spec.snapshot_at)?;
    fs::create_dir_all(&spec.output_dir).map_err(|e| io_err(&spec.output_dir, e))?;
    let variant = spec.base.algorithm;
    let seed = spec.base.seed;
    let mut files = Vec::new();
    write_run_files(
        &spec.output_dir,
        &spec.base,
        variant,
        seed,
        &out,
        &mut files,
    )?;
    Ok(ExperimentSummary {
        runs: vec![RunRecord {
            variant,
            seed,
            reports: out.reports,
        }],
        files,
    })
}

/// Executes the full paired sweep: every variant on every seed, identical
/// seeds across variants. Writes per-run files plus `comparison.csv`.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentSummary, HarnessError> {
    spec.validate()?;
    let jobs: Vec<(Algorithm, u64)> = spec
        .variants
        .iter()
        .flat_map(|&v| spec.seeds.iter().map(move |&s| (v, s)))
        .collect();
    let outputs: Vec<Result<RunOutput, ConfigError>> = jobs
        .par_iter()
        .map(|&(variant, seed)| {
            let cfg = SimConfig {
                algorithm: variant,
                seed,
                ..spec.base.clone()
            };
            engine::run(&cfg, &spec.snapshot_at)
        })
        .collect();

    fs::create_dir_all(&spec.output_dir).map_err(|e| io_err(&spec.output_dir, e))?;
    let mut files = Vec::new();
    let mut runs = Vec::with_capacity(jobs.len());
    for (&(variant, seed), output) in jobs.iter().zip(outputs) {
        let out = output?;
        write_run_files(
            &spec.output_dir,
            &spec.base,
            variant,
            seed,
            &out,
            &mut files,
        )?;
        runs.push(RunRecord {
            variant,
            seed,
            reports: out.reports,
        });
    }

    let aggregate = aggregate_csv(spec, &runs);
    let path = spec.output_dir.join("comparison.csv");
    fs::write(&path, aggregate).map_err(|e| io_err(&path, e))?;
    files.push(path);
    Ok(ExperimentSummary { runs, files })
}

fn io_err(path: &Path, source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_run_files(
    dir: &Path,
    cfg: &SimConfig,
    variant: Algorithm,
    seed: u64,
    out: &RunOutput,
    files: &mut Vec<PathBuf>,
) -> Result<(), HarnessError> {
    let stem = format!("{}_seed{}", variant.name(), seed);
    let csv_path = dir.join(format!("{stem}.csv"));
    fs::write(&csv_path, run_csv(cfg, &out.reports)).map_err(|e| io_err(&csv_path, e))?;
    files.push(csv_path);
    for snap in &out.snapshots {
        let txt_path = dir.join(format!("{stem}_t{}.txt", snap.iteration));
        fs::write(&txt_path, snapshot::grid_to_text(&snap.grid)?)
            .map_err(|e| io_err(&txt_path, e))?;
        files.push(txt_path);
        let ants_path = dir.join(format!("{stem}_t{}.ants", snap.iteration));
        fs::write(&ants_path, snapshot::ants_to_text(&snap.ants))
            .map_err(|e| io_err(&ants_path, e))?;
        files.push(ants_path);
    }
    Ok(())
}

/// Renders the per-run CSV for a report series.
pub fn run_csv(cfg: &SimConfig, reports: &[ClusterReport]) -> String {
    let mut out = String::from("iteration,clusters_total");
    if cfg.num_types() == 2 {
        out.push_str(",clusters_red,clusters_blue");
    } else {
        for i in 0..cfg.num_types() {
            write!(out, ",clusters_type{i}").unwrap();
        }
    }
    out.push_str(",largest_cluster,carried_count\n");
    for r in reports {
        write!(out, "{},{}", r.iteration, r.clusters_total).unwrap();
        for &count in &r.clusters_by_type {
            write!(out, ",{count}").unwrap();
        }
        writeln!(out, ",{},{}", r.largest_cluster, r.carried_count).unwrap();
    }
    out
}

/// Renders the aggregate comparison CSV: per variant and checkpoint, the
/// mean and sample standard deviation of total cluster counts over seeds.
pub fn aggregate_csv(spec: &ExperimentSpec, runs: &[RunRecord]) -> String {
    let mut out = String::from("variant,iteration,mean_clusters,sd_clusters,n_seeds\n");
    let n = spec.seeds.len();
    for &variant in &spec.variants {
        for (i, &checkpoint) in spec.base.checkpoints.iter().enumerate() {
            let values: Vec<f64> = runs
                .iter()
                .filter(|r| r.variant == variant)
                .map(|r| r.reports[i].clusters_total as f64)
                .collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let sd = if values.len() > 1 {
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                    / (values.len() - 1) as f64;
                var.sqrt()
            } else {
                0.0
            };
            writeln!(
                out,
                "{},{},{mean:.4},{sd:.4},{n}",
                variant.name(),
                checkpoint
            )
            .unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec(dir: &Path) -> ExperimentSpec {
        ExperimentSpec {
            base: SimConfig {
                height: 12,
                width: 12,
                ants: 6,
                objects_per_type: vec![4, 4],
                mutation_rate: 0.25,
                max_iter: 40,
                checkpoints: vec![20, 40],
                ..SimConfig::default()
            },
            variants: vec![Algorithm::Aca, Algorithm::Haca],
            seeds: vec![0, 1, 2],
            output_dir: dir.to_path_buf(),
            snapshot_at: vec![],
        }
    }

    #[test]
    fn per_run_csv_shape() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = tiny_spec(dir.path());
        spec.variants = vec![Algorithm::Aca];
        spec.seeds = vec![7];
        spec.base.seed = 7;
        let summary = run_single(&spec).unwrap();
        let csv = fs::read_to_string(dir.path().join("aca_seed7.csv")).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "iteration,clusters_total,clusters_red,clusters_blue,largest_cluster,carried_count"
        );
        // 2 checkpoints + final
        assert_eq!(lines.len(), 4);
        assert!(
            lines[3].ends_with(",0"),
            "final row must report zero carried"
        );
        assert_eq!(summary.runs.len(), 1);
    }

    #[test]
    fn single_run_with_zero_iterations_writes_one_row() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = tiny_spec(dir.path());
        spec.variants = vec![Algorithm::Aca];
        spec.seeds = vec![0];
        spec.base.max_iter = 0;
        spec.base.checkpoints = vec![];
        let summary = run_single(&spec).unwrap();
        let csv = fs::read_to_string(dir.path().join("aca_seed0.csv")).unwrap();
        assert_eq!(csv.lines().count(), 2); // header + initial-state row
        let row = csv.lines().nth(1).unwrap();
        assert!(row.starts_with("0,"));
        assert_eq!(summary.runs[0].reports.len(), 1);
    }

    #[test]
    fn compare_writes_all_files_and_aggregate() {
        let dir = tempfile::tempdir().unwrap();
        let spec = tiny_spec(dir.path());
        let summary = run_experiment(&spec).unwrap();
        assert_eq!(summary.runs.len(), 6);
        for variant in ["aca", "haca"] {
            for seed in [0, 1, 2] {
                assert!(dir
                    .path()
                    .join(format!("{variant}_seed{seed}.csv"))
                    .exists());
                assert!(dir
                    .path()
                    .join(format!("{variant}_seed{seed}_t0.txt"))
                    .exists());
                assert!(dir
                    .path()
                    .join(format!("{variant}_seed{seed}_t40.ants"))
                    .exists());
            }
        }
        let agg = fs::read_to_string(dir.path().join("comparison.csv")).unwrap();
        let lines: Vec<&str> = agg.lines().collect();
        assert_eq!(
            lines[0],
            "variant,iteration,mean_clusters,sd_clusters,n_seeds"
        );
        assert_eq!(lines.len(), 1 + 2 * 2); // 2 variants x 2 checkpoints
        assert!(lines[1].starts_with("aca,20,"));
        assert!(lines[4].starts_with("haca,40,"));
    }

    #[test]
    fn aggregate_means_match_independent_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let spec = tiny_spec(dir.path());
        let summary = run_experiment(&spec).unwrap();
        let agg = fs::read_to_string(dir.path().join("comparison.csv")).unwrap();
        for line in agg.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let variant = fields[0];
            let iteration: u64 = fields[1].parse().unwrap();
            let mean: f64 = fields[2].parse().unwrap();
            // recompute from the per-run CSV files on disk
            let mut values = Vec::new();
            for seed in &spec.seeds {
                let csv = fs::read_to_string(dir.path().join(format!("{variant}_seed{seed}.csv")))
                    .unwrap();
                // the checkpoint row (not the final row) for this iteration
                let row = csv
                    .lines()
                    .skip(1)
                    .find(|l| l.starts_with(&format!("{iteration},")))
                    .unwrap();
                let total: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
                values.push(total);
            }
            let recomputed = values.iter().sum::<f64>() / values.len() as f64;
            assert_eq!(
                fields[2],
                format!("{recomputed:.4}"),
                "aggregate mean {mean} != recomputed {recomputed} for {variant}@{iteration}"
            );
        }
        assert_eq!(summary.files.len(), 6 * 3 + 6 * 2 + 1);
    }

    #[test]
    fn rerun_is_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let mut spec = tiny_spec(dir_a.path());
        run_experiment(&spec).unwrap();
        spec.output_dir = dir_b.path().to_path_buf();
        run_experiment(&spec).unwrap();
        for entry in fs::read_dir(dir_a.path()).unwrap() {
            let name = entry.unwrap().file_name();
            let a = fs::read(dir_a.path().join(&name)).unwrap();
            let b = fs::read(dir_b.path().join(&name)).unwrap();
            assert_eq!(a, b, "file {name:?} differs between reruns");
        }
    }

    #[test]
    fn snapshots_at_requested_iterations() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = tiny_spec(dir.path());
        spec.variants = vec![Algorithm::Haca];
        spec.seeds = vec![3];
        spec.base.algorithm = Algorithm::Haca;
        spec.base.seed = 3;
        spec.snapshot_at = vec![20];
        run_single(&spec).unwrap();
        for t in [0, 20, 40] {
            assert!(dir.path().join(format!("haca_seed3_t{t}.txt")).exists());
            assert!(dir.path().join(format!("haca_seed3_t{t}.ants")).exists());
        }
    }

    #[test]
    fn unwritable_output_dir_is_an_io_error() {
        let file = tempfile::NamedTempFile::new().unwrap();
        // a regular file cannot be an output directory
        let mut spec = ExperimentSpec {
            output_dir: file.path().to_path_buf(),
            ..tiny_spec(Path::new("unused"))
        };
        spec.base.max_iter = 0;
        spec.base.checkpoints = vec![];
        assert!(matches!(
            run_experiment(&spec),
            Err(HarnessError::Io { .. })
        ));
    }
}
