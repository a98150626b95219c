use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the continuous metric psychological space.
///
/// Coordinates are dimensionless reals; all values are finite and the
/// dimensionality is at least one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Stimulus(Vec<f64>);

impl Stimulus {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyStimulus);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteValue { index, value });
            }
        }
        Ok(Stimulus(values))
    }

    /// Two-dimensional stimulus, the shape used throughout the built-in conditions.
    pub fn point2(x: f64, y: f64) -> Result<Self> {
        Stimulus::new(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Euclidean distance to another stimulus of the same dimensionality.
    pub fn distance(&self, other: &Stimulus) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(euclidean(self.values(), other.values()))
    }
}

impl TryFrom<Vec<f64>> for Stimulus {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Stimulus::new(values)
    }
}

impl From<Stimulus> for Vec<f64> {
    fn from(s: Stimulus) -> Vec<f64> {
        s.0
    }
}

/// Euclidean distance between two equal-length slices.
pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Checks that every stimulus shares the dimensionality of the first.
pub(crate) fn uniform_dim(stimuli: &[Stimulus]) -> Result<usize> {
    let first = stimuli.first().ok_or(Error::EmptyTrainingSet)?;
    let dim = first.dim();
    for s in stimuli {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: s.dim(),
            });
        }
    }
    Ok(dim)
}
