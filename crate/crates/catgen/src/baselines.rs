//! Minimal prototype and exemplar models, used to check which comparative
//! effects they do and do not produce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stimulus::{uniform_dim, Stimulus};

/// Default similarity decay for the exemplar model.
pub const DEFAULT_SPECIFICITY: f64 = 0.1;

/// Prototype theory in its minimal form: the component-wise mean of the
/// examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrototypeModel {
    prototype: Stimulus,
}

impl PrototypeModel {
    pub fn fit(examples: &[Stimulus]) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::EmptyExamples);
        }
        let dim = uniform_dim(examples)?;
        let mut mean = vec![0.0; dim];
        for x in examples {
            for (m, &v) in mean.iter_mut().zip(x.values()) {
                *m += v;
            }
        }
        let n = examples.len() as f64;
        for m in &mut mean {
            *m /= n;
        }
        Ok(PrototypeModel {
            prototype: Stimulus::new(mean)?,
        })
    }

    pub fn prototype(&self) -> &Stimulus {
        &self.prototype
    }

    /// Euclidean distance from `y` to the prototype.
    pub fn distance(&self, y: &Stimulus) -> Result<f64> {
        self.prototype.distance(y)
    }
}

/// Exemplar theory in its minimal form: the stored examples themselves,
/// queried either by nearest-exemplar distance or by summed exponential
/// similarity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExemplarModel {
    exemplars: Vec<Stimulus>,
    specificity: f64,
}

impl ExemplarModel {
    pub fn new(exemplars: Vec<Stimulus>, specificity: f64) -> Result<Self> {
        if exemplars.is_empty() {
            return Err(Error::EmptyExamples);
        }
        uniform_dim(&exemplars)?;
        if !specificity.is_finite() || specificity <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "specificity must be positive, got {specificity}"
            )));
        }
        Ok(ExemplarModel {
            exemplars,
            specificity,
        })
    }

    pub fn exemplars(&self) -> &[Stimulus] {
        &self.exemplars
    }

    pub fn specificity(&self) -> f64 {
        self.specificity
    }

    /// Distance from `y` to the nearest stored exemplar.
    pub fn min_distance(&self, y: &Stimulus) -> Result<f64> {
        let mut best = f64::INFINITY;
        for x in &self.exemplars {
            best = best.min(x.distance(y)?);
        }
        Ok(best)
    }

    /// Sum over exemplars of exp(-c * distance).
    pub fn summed_similarity(&self, y: &Stimulus) -> Result<f64> {
        let mut total = 0.0;
        for x in &self.exemplars {
            total += (-self.specificity * x.distance(y)?).exp();
        }
        Ok(total)
    }
}
