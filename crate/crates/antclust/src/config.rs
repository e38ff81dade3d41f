//! Experiment configuration: defaults, validation, and the flat
//! `key = value` config file format.
//!
//! The file format is line-oriented: one `key = value` pair per line,
//! `#` starts a comment, blank lines are ignored. Every key has a
//! default (the shipped defaults are the 128x128 / 500-ant / 100+100
//! benchmark setup), so an empty file is a valid spec. Unknown and
//! duplicate keys are rejected, and each violated invariant is reported
//! with the key name and the offending value.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::grid::Dims;
use crate::metrics::Adjacency;
use crate::movement::{bit_width, NeighborhoodKind};

/// Which movement rule drives the ants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Baseline: one-cell random walk per iteration.
    Aca,
    /// Hybrid: genome recombination + mutation of the current location.
    Haca,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Aca => "aca",
            Algorithm::Haca => "haca",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "aca" => Ok(Algorithm::Aca),
            "haca" => Ok(Algorithm::Haca),
            _ => Err("expected `aca` or `haca`".into()),
        }
    }
}

/// All parameters of one simulation run.
#[derive(Clone, Debug)]
pub struct SimConfig {
    /// Grid rows (Y).
    pub height: usize,
    /// Grid columns (Z).
    pub width: usize,
    /// Number of ants (N).
    pub ants: usize,
    /// Object count for each type; the list length is the type count L.
    pub objects_per_type: Vec<usize>,
    /// Odd side length s of the perception square.
    pub neighborhood_side: usize,
    /// Pick-up threshold constant.
    pub k1: f64,
    /// Drop-off threshold constant.
    pub k2: f64,
    /// Per-bit mutation probability for the hybrid movement step.
    pub mutation_rate: f64,
    /// Whether the hybrid step performs the coordinate crossover.
    pub crossover: bool,
    pub algorithm: Algorithm,
    /// Number of iterations to run.
    pub max_iter: u64,
    /// Iterations at which cluster statistics are recorded; ascending,
    /// each in `[1, max_iter]`.
    pub checkpoints: Vec<u64>,
    pub seed: u64,
    /// When false (default), perceived density is the bare count of
    /// occupied neighbor cells; when true it is normalized to a fraction
    /// of the neighborhood size.
    pub density_normalized: bool,
    /// Neighbor set for the baseline random walk.
    pub baseline_neighborhood: NeighborhoodKind,
    /// Adjacency used by the cluster metric.
    pub cluster_adjacency: Adjacency,
    /// Minimum component size counted as a cluster.
    pub cluster_min_size: usize,
}

impl Default for SimConfig {
    /// The benchmark setup: 128x128 grid, 500 ants, 100 red and 100 blue
    /// objects, 3x3 perception, k1 = 0.1, k2 = 0.15, mutation rate 1/7,
    /// 1000 iterations with checkpoints every 100.
    fn default() -> Self {
        Self {
            height: 128,
            width: 128,
            ants: 500,
            objects_per_type: vec![100, 100],
            neighborhood_side: 3,
            k1: 0.1,
            k2: 0.15,
            mutation_rate: 1.0 / 7.0,
            crossover: true,
            algorithm: Algorithm::Aca,
            max_iter: 1000,
            checkpoints: (1..=10).map(|i| i * 100).collect(),
            seed: 0,
            density_normalized: false,
            baseline_neighborhood: NeighborhoodKind::Moore,
            cluster_adjacency: Adjacency::Eight,
            cluster_min_size: 1,
        }
    }
}

impl SimConfig {
    pub fn dims(&self) -> Dims {
        Dims::new(self.height, self.width)
    }

    pub fn num_types(&self) -> usize {
        self.objects_per_type.len()
    }

    pub fn total_objects(&self) -> usize {
        self.objects_per_type.iter().sum()
    }

    /// Genome bit width implied by the grid dimensions.
    pub fn bit_width(&self) -> u32 {
        bit_width(self.dims())
    }

    /// Default per-bit mutation rate: one expected flip per coordinate.
    pub fn default_mutation_rate(height: usize, width: usize) -> f64 {
        1.0 / bit_width(Dims::new(height.max(1), width.max(1))) as f64
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |key: &str, value: String, reason: &str| {
            Err(ConfigError::Invalid {
                key: key.to_string(),
                value,
                reason: reason.to_string(),
            })
        };
        if self.height == 0 {
            return invalid("height", self.height.to_string(), "must be positive");
        }
        if self.width == 0 {
            return invalid("width", self.width.to_string(), "must be positive");
        }
        if self.objects_per_type.is_empty() {
            return invalid(
                "objects_per_type",
                "[]".into(),
                "need at least one object type",
            );
        }
        if self.objects_per_type.len() > 10 {
            return invalid(
                "objects_per_type",
                format!("{} types", self.objects_per_type.len()),
                "the snapshot format supports at most 10 types",
            );
        }
        // u128 keeps the feasibility check overflow-free for absurd inputs
        let cells = self.height as u128 * self.width as u128;
        if cells > 1 << 31 {
            return invalid(
                "height",
                format!("{} x {} cells", self.height, self.width),
                "grid exceeds the supported 2^31 cells",
            );
        }
        let objects: u128 = self.objects_per_type.iter().map(|&n| n as u128).sum();
        if self.ants as u128 + objects >= cells {
            return invalid(
                "ants",
                format!("{} ants + {objects} objects on {cells} cells", self.ants),
                "ants plus objects must total fewer than the grid cells",
            );
        }
        let s = self.neighborhood_side;
        if let Err(e) = self.dims().check_side(s) {
            return invalid("neighborhood_side", s.to_string(), &e.to_string());
        }
        if !(self.k1 > 0.0 && self.k1.is_finite()) {
            return invalid(
                "k1",
                self.k1.to_string(),
                "must be a positive finite number",
            );
        }
        if !(self.k2 > 0.0 && self.k2.is_finite()) {
            return invalid(
                "k2",
                self.k2.to_string(),
                "must be a positive finite number",
            );
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return invalid(
                "mutation_rate",
                self.mutation_rate.to_string(),
                "must be in [0, 1]",
            );
        }
        let mut prev = 0u64;
        for &cp in &self.checkpoints {
            if cp < 1 || cp > self.max_iter {
                return invalid(
                    "checkpoints",
                    cp.to_string(),
                    "checkpoints must lie in [1, max_iter]",
                );
            }
            if cp <= prev && prev != 0 {
                return invalid(
                    "checkpoints",
                    cp.to_string(),
                    "checkpoints must be ascending",
                );
            }
            prev = cp;
        }
        if self.cluster_min_size == 0 {
            return invalid("cluster_min_size", "0".into(), "must be at least 1");
        }
        Ok(())
    }
}

/// A full experiment: a base configuration plus the variants and seeds to
/// sweep, and where to write artifacts. Paired comparisons reuse the same
/// seeds for every variant.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub base: SimConfig,
    pub variants: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
    /// Extra iterations to snapshot; the initial and final states are
    /// always written.
    pub snapshot_at: Vec<u64>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            base: SimConfig::default(),
            variants: vec![Algorithm::Aca, Algorithm::Haca],
            seeds: (0..20).collect(),
            output_dir: PathBuf::from("out"),
            snapshot_at: Vec::new(),
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.base.validate()?;
        let invalid = |key: &str, value: String, reason: &str| {
            Err(ConfigError::Invalid {
                key: key.to_string(),
                value,
                reason: reason.to_string(),
            })
        };
        if self.variants.is_empty() {
            return invalid("variants", "[]".into(), "need at least one variant");
        }
        if self.seeds.is_empty() {
            return invalid("seeds", "[]".into(), "need at least one seed");
        }
        for &t in &self.snapshot_at {
            if t > self.base.max_iter {
                return invalid("snapshot_at", t.to_string(), "beyond max_iter");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("key `{key}`: cannot parse `{value}`: {reason}")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("key `{key}` = {value}: {reason}")]
    Invalid {
        key: String,
        value: String,
        reason: String,
    },
}

const KEYS: &[&str] = &[
    "height",
    "width",
    "ants",
    "objects_per_type",
    "neighborhood_side",
    "k1",
    "k2",
    "mutation_rate",
    "crossover",
    "algorithm",
    "max_iter",
    "checkpoints",
    "seed",
    "density_normalized",
    "baseline_neighborhood",
    "cluster_adjacency",
    "cluster_min_size",
    "variants",
    "seeds",
    "output_dir",
    "snapshot_at",
];

/// Parses and fully validates a config file.
pub fn parse_config(path: &Path) -> Result<ExperimentSpec, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

/// Parses an experiment spec from config file contents. Never panics on
/// malformed input; every failure is a structured error.
pub fn parse_config_str(text: &str) -> Result<ExperimentSpec, ConfigError> {
    let mut seen: Vec<(String, String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                line: line_no,
                text: line.to_string(),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line: line_no, key });
        }
        if seen.iter().any(|(k, _, _)| *k == key) {
            return Err(ConfigError::DuplicateKey { line: line_no, key });
        }
        seen.push((key, value, line_no));
    }

    let mut base = SimConfig::default();
    let mut spec_defaults = ExperimentSpec::default();
    let mut mutation_rate: Option<f64> = None;
    let mut checkpoints: Option<Vec<u64>> = None;

    for (key, value, _) in &seen {
        let bad = |reason: &str| ConfigError::BadValue {
            key: key.clone(),
            value: value.clone(),
            reason: reason.to_string(),
        };
        match key.as_str() {
            "height" => base.height = parse_num(value).map_err(|e| bad(&e))?,
            "width" => base.width = parse_num(value).map_err(|e| bad(&e))?,
            "ants" => base.ants = parse_num(value).map_err(|e| bad(&e))?,
            "objects_per_type" => base.objects_per_type = parse_list(value).map_err(|e| bad(&e))?,
            "neighborhood_side" => {
                base.neighborhood_side = parse_num(value).map_err(|e| bad(&e))?
            }
            "k1" => base.k1 = parse_float(value).map_err(|e| bad(&e))?,
            "k2" => base.k2 = parse_float(value).map_err(|e| bad(&e))?,
            "mutation_rate" => mutation_rate = Some(parse_float(value).map_err(|e| bad(&e))?),
            "crossover" => base.crossover = parse_bool(value).map_err(|e| bad(&e))?,
            "algorithm" => base.algorithm = value.parse().map_err(|e: String| bad(&e))?,
            "max_iter" => base.max_iter = parse_num(value).map_err(|e| bad(&e))?,
            "checkpoints" => checkpoints = Some(parse_list(value).map_err(|e| bad(&e))?),
            "seed" => base.seed = parse_num(value).map_err(|e| bad(&e))?,
            "density_normalized" => {
                base.density_normalized = parse_bool(value).map_err(|e| bad(&e))?
            }
            "baseline_neighborhood" => {
                base.baseline_neighborhood = match value.as_str() {
                    "moore" => NeighborhoodKind::Moore,
                    "von_neumann" => NeighborhoodKind::VonNeumann,
                    _ => return Err(bad("expected `moore` or `von_neumann`")),
                }
            }
            "cluster_adjacency" => {
                base.cluster_adjacency = match value.as_str() {
                    "eight" => Adjacency::Eight,
                    "four" => Adjacency::Four,
                    _ => return Err(bad("expected `eight` or `four`")),
                }
            }
            "cluster_min_size" => base.cluster_min_size = parse_num(value).map_err(|e| bad(&e))?,
            "variants" => {
                let names: Vec<&str> = value.split(',').map(str::trim).collect();
                let mut variants = Vec::new();
                for name in names {
                    let v: Algorithm = name.parse().map_err(|e: String| bad(&e))?;
                    if variants.contains(&v) {
                        return Err(bad("variant listed twice"));
                    }
                    variants.push(v);
                }
                spec_defaults.variants = variants;
            }
            "seeds" => spec_defaults.seeds = parse_list(value).map_err(|e| bad(&e))?,
            "output_dir" => spec_defaults.output_dir = PathBuf::from(value),
            "snapshot_at" => spec_defaults.snapshot_at = parse_list(value).map_err(|e| bad(&e))?,
            _ => unreachable!("key list is checked above"),
        }
    }

    base.mutation_rate =
        mutation_rate.unwrap_or_else(|| SimConfig::default_mutation_rate(base.height, base.width));
    // Default checkpoints follow the iteration budget.
    base.checkpoints = checkpoints.unwrap_or_else(|| {
        (1..=10)
            .map(|i| i * 100)
            .filter(|&cp| cp <= base.max_iter)
            .collect()
    });

    let spec = ExperimentSpec {
        base,
        ..spec_defaults
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_num<T: std::str::FromStr>(value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| "expected a non-negative integer".to_string())
}

fn parse_float(value: &str) -> Result<f64, String> {
    value.parse().map_err(|_| "expected a number".to_string())
}

fn parse_bool(value: &str) -> Result<bool, String> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err("expected `true` or `false`".to_string()),
    }
}

fn parse_list<T: std::str::FromStr>(value: &str) -> Result<Vec<T>, String> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|item| {
            item.trim()
                .parse()
                .map_err(|_| format!("cannot parse list item `{}`", item.trim()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_the_default_experiment() {
        let spec = parse_config_str("").unwrap();
        assert_eq!(spec.base.height, 128);
        assert_eq!(spec.base.ants, 500);
        assert_eq!(spec.base.objects_per_type, vec![100, 100]);
        assert_eq!(spec.base.k1, 0.1);
        assert_eq!(spec.base.k2, 0.15);
        assert_eq!(spec.base.mutation_rate, 1.0 / 7.0);
        assert_eq!(
            spec.base.checkpoints,
            vec![100, 200, 300, 400, 500, 600, 700, 800, 900, 1000]
        );
        assert_eq!(spec.variants, vec![Algorithm::Aca, Algorithm::Haca]);
        assert_eq!(spec.seeds, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn omitting_k1_uses_documented_default() {
        let spec = parse_config_str("k2 = 0.3\n").unwrap();
        assert_eq!(spec.base.k1, 0.1);
        assert_eq!(spec.base.k2, 0.3);
    }

    #[test]
    fn mutation_rate_default_tracks_bit_width() {
        let spec = parse_config_str("height = 100\nwidth = 100\n").unwrap();
        assert_eq!(spec.base.mutation_rate, 1.0 / 7.0);
        let spec = parse_config_str("height = 16\nwidth = 16\nants = 4\nobjects_per_type = 3,3\n")
            .unwrap();
        assert_eq!(spec.base.mutation_rate, 0.25);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# benchmark\n\nheight = 64  # rows\nwidth = 64\n";
        let spec = parse_config_str(text).unwrap();
        assert_eq!(spec.base.height, 64);
        assert_eq!(spec.base.width, 64);
    }

    #[test]
    fn infeasible_population_names_the_rule() {
        let err = parse_config_str("height = 8\nwidth = 8\nants = 60\nobjects_per_type = 2,2\n")
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("ants"), "message was: {msg}");
        assert!(
            msg.contains("fewer than the grid cells"),
            "message was: {msg}"
        );
    }

    #[test]
    fn unknown_and_duplicate_keys_are_rejected() {
        assert!(matches!(
            parse_config_str("bogus = 1\n"),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(
            parse_config_str("k1 = 0.1\nk1 = 0.2\n"),
            Err(ConfigError::DuplicateKey { .. })
        ));
    }

    #[test]
    fn bad_values_name_key_and_value() {
        let err = parse_config_str("k1 = fast\n").unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("k1") && msg.contains("fast"),
            "message was: {msg}"
        );
    }

    #[test]
    fn even_neighborhood_side_is_rejected() {
        let err = parse_config_str("neighborhood_side = 4\n").unwrap_err();
        assert!(err.to_string().contains("neighborhood_side"));
    }

    #[test]
    fn checkpoints_must_stay_within_budget() {
        let err = parse_config_str("max_iter = 50\ncheckpoints = 10,60\n").unwrap_err();
        assert!(err.to_string().contains("checkpoints"));
        // default checkpoints adapt to a small budget instead of failing
        let spec = parse_config_str("max_iter = 250\n").unwrap();
        assert_eq!(spec.base.checkpoints, vec![100, 200]);
        let spec = parse_config_str("max_iter = 0\n").unwrap();
        assert!(spec.base.checkpoints.is_empty());
    }

    #[test]
    fn descending_checkpoints_are_rejected() {
        let err = parse_config_str("checkpoints = 200,100\n").unwrap_err();
        assert!(err.to_string().contains("ascending"));
    }

    #[test]
    fn zero_mutation_and_zero_objects_are_legal() {
        let spec = parse_config_str("mutation_rate = 0\nobjects_per_type = 0\nsnapshot_at = 500\n")
            .unwrap();
        assert_eq!(spec.base.mutation_rate, 0.0);
        assert_eq!(spec.base.objects_per_type, vec![0]);
        assert_eq!(spec.snapshot_at, vec![500]);
    }
}
