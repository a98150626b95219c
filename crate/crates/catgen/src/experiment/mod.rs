//! End-to-end experiment harness: condition presets, seed-ensemble
//! execution, and ensemble statistics.

mod csv_io;
mod report;

pub use csv_io::{
    read_bayes_csv, read_condition_csv, write_bayes_csv, write_condition_csv, write_raw_csv,
    write_report_json, BayesRow, CurveRow, RawRow,
};
pub use report::{
    run_effect_report, EffectReport, EffectVerdict, MIN_SEEDS_FOR_VERDICTS, SEPARATION_THRESHOLD,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generalization::CategoryRepresentation;
use crate::som::{Map, SomConfig};
use crate::stimulus::Stimulus;

/// Environment variable that offsets the seed range of every ensemble run.
pub const SEED_BASE_ENV: &str = "CATGEN_SEED_BASE";

/// Evenly spaced probe positions along dimension 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for ProbeGrid {
    fn default() -> Self {
        ProbeGrid {
            lo: 0.0,
            hi: 100.0,
            step: 1.0,
        }
    }
}

impl ProbeGrid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        let grid = ProbeGrid { lo, hi, step };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() || self.lo > self.hi {
            return Err(Error::InvalidConfig(format!(
                "probe grid bounds must satisfy lo <= hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if !self.step.is_finite() || self.step <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "probe grid step must be positive, got {}",
                self.step
            )));
        }
        Ok(())
    }

    /// Probe positions lo, lo+step, ... up to hi (inclusive when hi lands on
    /// the grid).
    pub fn points(&self) -> Vec<f64> {
        let mut points = Vec::new();
        let mut i = 0u64;
        loop {
            let p = self.lo + i as f64 * self.step;
            if p > self.hi + self.step * 1e-9 {
                break;
            }
            points.push(p);
            i += 1;
        }
        points
    }

    /// Probes as `dim`-dimensional stimuli: dimension 0 varies over the
    /// grid, the remaining coordinates are 0.
    pub fn stimuli(&self, dim: usize) -> Vec<Stimulus> {
        self.points()
            .into_iter()
            .map(|p| {
                let mut v = vec![0.0; dim];
                v[0] = p;
                Stimulus::new(v).expect("grid points are finite")
            })
            .collect()
    }

    /// Index of a probe value on the grid, if it lies on it.
    pub fn index_of(&self, probe: f64) -> Option<usize> {
        let idx = (probe - self.lo) / self.step;
        let rounded = idx.round();
        if (idx - rounded).abs() > 1e-9 || rounded < 0.0 {
            return None;
        }
        let i = rounded as usize;
        (i < self.points().len()).then_some(i)
    }
}

/// A complete experiment definition: stimuli, probe grid, map
/// configuration, and ensemble size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionSpec {
    pub name: String,
    pub stimuli: Vec<Stimulus>,
    #[serde(default)]
    pub probe_grid: ProbeGrid,
    #[serde(default)]
    pub som_config: SomConfig,
    #[serde(default = "default_n_seeds")]
    pub n_seeds: u32,
}

fn default_n_seeds() -> u32 {
    100
}

/// Names of the built-in conditions.
pub const PRESET_NAMES: [&str; 5] = ["base", "numerosity", "variability", "set1", "set2"];

impl ConditionSpec {
    /// A built-in condition by name.
    pub fn preset(name: &str) -> Result<ConditionSpec> {
        let stimuli: Vec<[f64; 2]> = match name {
            "base" => vec![[50.0, 0.0], [60.0, 0.0]],
            "numerosity" => vec![
                [50.0, 0.0],
                [53.0, 0.0],
                [55.0, 0.0],
                [57.0, 0.0],
                [59.0, 0.0],
                [60.0, 0.0],
            ],
            "variability" => vec![[30.0, 0.0], [60.0, 0.0]],
            "set1" => vec![[30.0, 0.0], [40.0, 0.0], [60.0, 0.0]],
            "set2" => vec![[30.0, 0.0], [50.0, 0.0], [60.0, 0.0]],
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        Ok(ConditionSpec {
            name: name.to_string(),
            stimuli: stimuli
                .into_iter()
                .map(|[x, y]| Stimulus::point2(x, y).expect("finite"))
                .collect(),
            probe_grid: ProbeGrid::default(),
            som_config: SomConfig::default(),
            n_seeds: default_n_seeds(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.stimuli.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        crate::stimulus::uniform_dim(&self.stimuli)?;
        self.probe_grid.validate()?;
        self.som_config.validate()?;
        if self.n_seeds == 0 {
            return Err(Error::InvalidConfig("n_seeds must be at least 1".into()));
        }
        Ok(())
    }

    /// Reads a condition from a JSON file; unknown fields are rejected.
    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<ConditionSpec> {
        let text = std::fs::read_to_string(path)?;
        let spec: ConditionSpec = serde_json::from_str(&text)?;
        spec.validate()?;
        Ok(spec)
    }
}

/// One seed's pipeline output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub rd: Vec<f64>,
    pub max_qe: f64,
}

/// Ensemble statistics for a condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub spec: ConditionSpec,
    pub probes: Vec<f64>,
    pub mean_rd: Vec<f64>,
    pub stderr_rd: Vec<f64>,
    pub mean_max_qe: f64,
    pub stderr_max_qe: f64,
    /// Per-seed curves, kept only when requested.
    pub raw: Option<Vec<SeedRun>>,
}

/// Runs one seed of the pipeline: initialize, train, build the category
/// representation, evaluate the probe curve.
fn run_seed(spec: &ConditionSpec, seed: u64, probes: &[Stimulus]) -> Result<SeedRun> {
    let config = spec.som_config.clone().with_seed(seed);
    let mut map = Map::init(&config, &spec.stimuli)?;
    map.train(&spec.stimuli)?;
    let rep = CategoryRepresentation::from_examples(&map, &spec.stimuli)?;
    let curve = rep.generalization_curve(probes)?;
    Ok(SeedRun {
        seed,
        rd: curve.values,
        max_qe: rep.tolerance(),
    })
}

/// Runs the condition for seeds base_seed .. base_seed + n_seeds - 1 and
/// aggregates per-probe means and standard errors. Seed runs execute in
/// parallel; aggregation happens in seed order, so the result is
/// deterministic and independent of scheduling.
pub fn run_condition(
    spec: &ConditionSpec,
    base_seed: u64,
    keep_raw: bool,
) -> Result<ConditionResult> {
    spec.validate()?;
    let dim = spec.stimuli[0].dim();
    let probes = spec.probe_grid.stimuli(dim);
    let probe_points = spec.probe_grid.points();

    let runs: Vec<SeedRun> = (0..spec.n_seeds as u64)
        .into_par_iter()
        .map(|i| run_seed(spec, base_seed + i, &probes))
        .collect::<Result<Vec<_>>>()?;

    let n_probes = probe_points.len();
    let mut mean_rd = Vec::with_capacity(n_probes);
    let mut stderr_rd = Vec::with_capacity(n_probes);
    for p in 0..n_probes {
        let values: Vec<f64> = runs.iter().map(|r| r.rd[p]).collect();
        mean_rd.push(mean(&values));
        stderr_rd.push(standard_error(&values));
    }
    let max_qes: Vec<f64> = runs.iter().map(|r| r.max_qe).collect();

    Ok(ConditionResult {
        spec: spec.clone(),
        probes: probe_points,
        mean_rd,
        stderr_rd,
        mean_max_qe: mean(&max_qes),
        stderr_max_qe: standard_error(&max_qes),
        raw: keep_raw.then_some(runs),
    })
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Standard error of the mean, sample variance with n-1 denominator;
/// zero for fewer than two observations.
pub(crate) fn standard_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n as f64 - 1.0);
    (var / n as f64).sqrt()
}

/// Separation of two ensemble means in units of the pooled standard error.
pub(crate) fn separation(mean_a: f64, se_a: f64, mean_b: f64, se_b: f64) -> f64 {
    let pooled = (se_a * se_a + se_b * se_b).sqrt();
    let gap = mean_a - mean_b;
    if pooled > 0.0 {
        gap / pooled
    } else if gap == 0.0 {
        0.0
    } else {
        f64::INFINITY * gap.signum()
    }
}
