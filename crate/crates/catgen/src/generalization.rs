//! Category representation on a trained map and the relative-distance
//! generalization measure.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::som::Map;
use crate::stimulus::{euclidean, Stimulus};

/// Below this threshold a tolerance (or a numerator) counts as zero when
/// deciding the degenerate cases of the relative distance.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// The map's representation of a category: the ensemble of best-matching
/// units of the training examples, plus the tolerance level (the maximal
/// quantization error over those examples).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryRepresentation {
    unit_indices: Vec<usize>,
    unit_weights: Vec<Vec<f64>>,
    tolerance: f64,
    dim: usize,
}

impl CategoryRepresentation {
    /// Collects the BMU of every example (duplicates collapse) and the
    /// maximal quantization error.
    pub fn from_examples(map: &Map, examples: &[Stimulus]) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::EmptyExamples);
        }
        let mut indices = BTreeSet::new();
        let mut tolerance = 0.0f64;
        for x in examples {
            indices.insert(map.best_matching_unit(x)?);
            tolerance = tolerance.max(map.quantization_error(x)?);
        }
        let unit_indices: Vec<usize> = indices.into_iter().collect();
        let unit_weights = unit_indices
            .iter()
            .map(|&i| map.units()[i].weight.clone())
            .collect();
        Ok(CategoryRepresentation {
            unit_indices,
            unit_weights,
            tolerance,
            dim: map.dim(),
        })
    }

    /// Indices of the representation units, ascending.
    pub fn unit_indices(&self) -> &[usize] {
        &self.unit_indices
    }

    pub fn unit_weights(&self) -> &[Vec<f64>] {
        &self.unit_weights
    }

    /// Maximal quantization error over the defining examples.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn check_dim(&self, y: &Stimulus) -> Result<()> {
        if y.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: y.dim(),
            });
        }
        Ok(())
    }

    /// Distance from `y` to the closest representation unit.
    fn nearest_unit_distance(&self, y: &Stimulus) -> f64 {
        self.unit_weights
            .iter()
            .map(|w| euclidean(y.values(), w))
            .fold(f64::INFINITY, f64::min)
    }

    /// Relative distance of `y` from the category: distance to the closest
    /// representation unit divided by the tolerance level.
    ///
    /// If the tolerance is (numerically) zero, the result is 0 when `y` sits
    /// on a representation unit and infinity otherwise.
    pub fn relative_distance(&self, y: &Stimulus) -> Result<f64> {
        self.check_dim(y)?;
        let numerator = self.nearest_unit_distance(y);
        if self.tolerance < ZERO_TOLERANCE {
            return Ok(if numerator < ZERO_TOLERANCE {
                0.0
            } else {
                f64::INFINITY
            });
        }
        Ok(numerator / self.tolerance)
    }

    /// The map's disposition to extend the category to `y`: the reciprocal
    /// of the relative distance (infinite at distance 0, zero at infinite
    /// distance).
    pub fn generalization_degree(&self, y: &Stimulus) -> Result<f64> {
        Ok(1.0 / self.relative_distance(y)?)
    }

    /// Element-wise relative distance over an ordered probe list.
    pub fn generalization_curve(&self, probes: &[Stimulus]) -> Result<GeneralizationCurve> {
        if probes.is_empty() {
            return Err(Error::EmptyProbes);
        }
        let values = probes
            .iter()
            .map(|p| self.relative_distance(p))
            .collect::<Result<Vec<f64>>>()?;
        Ok(GeneralizationCurve {
            probes: probes.to_vec(),
            values,
        })
    }
}

/// Relative distances over an ordered probe list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizationCurve {
    pub probes: Vec<Stimulus>,
    pub values: Vec<f64>,
}
