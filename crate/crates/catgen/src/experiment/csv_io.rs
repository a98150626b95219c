//! CSV and JSON emission for condition results, reference curves, and
//! effect reports.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ConditionResult, EffectReport};
use crate::bayes::BayesCurve;
use crate::error::{Error, Result};

/// One row of a condition curve file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub probe: f64,
    pub mean_rd: f64,
    pub stderr_rd: f64,
}

/// One row of a reference-model curve file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BayesRow {
    pub probe: f64,
    pub p_in_category: f64,
}

/// One row of a per-seed raw curve file (long format).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawRow {
    pub seed: u64,
    pub probe: f64,
    pub rd: f64,
}

/// Writes `probe,mean_rd,stderr_rd` rows, one per probe.
pub fn write_condition_csv(result: &ConditionResult, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for (i, &probe) in result.probes.iter().enumerate() {
        writer.serialize(CurveRow {
            probe,
            mean_rd: result.mean_rd[i],
            stderr_rd: result.stderr_rd[i],
        })?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_condition_csv(path: impl AsRef<Path>) -> Result<Vec<CurveRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Writes `seed,probe,rd` rows for every recorded seed run. Fails when the
/// result was produced without raw curves.
pub fn write_raw_csv(result: &ConditionResult, path: impl AsRef<Path>) -> Result<()> {
    let runs = result.raw.as_ref().ok_or(Error::RawCurvesUnavailable)?;
    let mut writer = csv::Writer::from_path(path)?;
    for run in runs {
        for (i, &probe) in result.probes.iter().enumerate() {
            writer.serialize(RawRow {
                seed: run.seed,
                probe,
                rd: run.rd[i],
            })?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Writes `probe,p_in_category` rows.
pub fn write_bayes_csv(curve: &BayesCurve, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for (&probe, &p) in curve.probes.iter().zip(&curve.values) {
        writer.serialize(BayesRow {
            probe,
            p_in_category: p,
        })?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_bayes_csv(path: impl AsRef<Path>) -> Result<Vec<BayesRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Writes the effect report as a pretty-printed JSON document.
pub fn write_report_json(report: &EffectReport, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
