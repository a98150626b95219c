//! Brute-force Bayesian generalization over one-dimensional interval
//! hypotheses with a size-principle likelihood.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate category extension: a closed interval of positive width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Size-principle likelihood: 1/|h|^n when the interval covers every
/// example, 0 otherwise.
pub fn likelihood(h: &Interval, examples: &[f64]) -> Result<f64> {
    if examples.is_empty() {
        return Err(Error::EmptyExamples);
    }
    if examples.iter().all(|&x| h.contains(x)) {
        Ok(h.width().powi(-(examples.len() as i32)))
    } else {
        Ok(0.0)
    }
}

/// All intervals [a, b] with a < b on an evenly spaced grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisSpace {
    grid_lo: f64,
    grid_hi: f64,
    step: f64,
    points: Vec<f64>,
}

impl HypothesisSpace {
    pub fn new(grid_lo: f64, grid_hi: f64, step: f64) -> Result<Self> {
        if !grid_lo.is_finite() || !grid_hi.is_finite() || grid_lo >= grid_hi {
            return Err(Error::InvalidGrid(format!(
                "bounds must satisfy lo < hi, got [{grid_lo}, {grid_hi}]"
            )));
        }
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        let span = (grid_hi - grid_lo) / step;
        let count = span.round();
        if (span - count).abs() > 1e-9 {
            return Err(Error::InvalidGrid(format!(
                "(hi - lo)/step must be an integer, got {span}"
            )));
        }
        let points = (0..=count as usize)
            .map(|i| grid_lo + i as f64 * step)
            .collect();
        Ok(HypothesisSpace {
            grid_lo,
            grid_hi,
            step,
            points,
        })
    }

    /// The reference grid: 0..100, step 1.
    pub fn default_grid() -> Self {
        HypothesisSpace::new(0.0, 100.0, 1.0).expect("reference grid is valid")
    }

    pub fn grid_lo(&self) -> f64 {
        self.grid_lo
    }

    pub fn grid_hi(&self) -> f64 {
        self.grid_hi
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn grid_points(&self) -> &[f64] {
        &self.points
    }

    /// Number of hypotheses: G(G-1)/2 for G grid points.
    pub fn len(&self) -> usize {
        self.points.len() * (self.points.len() - 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        false // a valid grid has at least two points, hence one hypothesis
    }

    /// Enumerates hypotheses in a fixed order: endpoints ascending,
    /// lexicographic by (lo, hi).
    pub fn hypotheses(&self) -> impl Iterator<Item = Interval> + '_ {
        let points = &self.points;
        (0..points.len()).flat_map(move |i| {
            ((i + 1)..points.len()).map(move |j| Interval {
                lo: points[i],
                hi: points[j],
            })
        })
    }
}

/// Posterior masses over a hypothesis space after observing some examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Posterior {
    space: HypothesisSpace,
    examples: Vec<f64>,
    masses: Vec<f64>,
}

impl Posterior {
    /// Exact enumeration under a uniform prior.
    pub fn uniform_prior(space: &HypothesisSpace, examples: &[f64]) -> Result<Self> {
        Posterior::compute(space, examples, None)
    }

    /// Exact enumeration under explicit (unnormalized) prior weights, one
    /// per hypothesis in enumeration order.
    pub fn with_prior(space: &HypothesisSpace, examples: &[f64], prior: &[f64]) -> Result<Self> {
        if prior.len() != space.len() {
            return Err(Error::PriorLengthMismatch {
                expected: space.len(),
                actual: prior.len(),
            });
        }
        if prior.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidPrior);
        }
        Posterior::compute(space, examples, Some(prior))
    }

    fn compute(space: &HypothesisSpace, examples: &[f64], prior: Option<&[f64]>) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::EmptyExamples);
        }
        if let Some(&bad) = examples.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFiniteValue { index: 0, value: bad });
        }
        let min = examples.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = examples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if min < space.grid_lo || max > space.grid_hi {
            return Err(Error::NoCoveringHypothesis {
                min,
                max,
                grid_lo: space.grid_lo,
                grid_hi: space.grid_hi,
            });
        }

        let mut masses: Vec<f64> = space
            .hypotheses()
            .enumerate()
            .map(|(k, h)| {
                let weight = prior.map_or(1.0, |p| p[k]);
                weight * likelihood(&h, examples).expect("examples checked non-empty")
            })
            .collect();
        let total = kahan_sum(masses.iter().copied());
        if !total.is_finite() {
            return Err(Error::InvalidGrid(
                "likelihood sum is not finite; the grid step is too fine for this many examples"
                    .into(),
            ));
        }
        if total <= 0.0 {
            // all covering hypotheses carried zero prior weight
            return Err(Error::InvalidPrior);
        }
        for m in &mut masses {
            *m /= total;
        }
        Ok(Posterior {
            space: space.clone(),
            examples: examples.to_vec(),
            masses,
        })
    }

    pub fn space(&self) -> &HypothesisSpace {
        &self.space
    }

    pub fn examples(&self) -> &[f64] {
        &self.examples
    }

    /// Normalized masses, in the space's enumeration order.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Probability that `y` belongs to the category: the summed posterior
    /// mass of every hypothesis containing `y`.
    pub fn generalization_probability(&self, y: f64) -> f64 {
        kahan_sum(
            self.space
                .hypotheses()
                .zip(&self.masses)
                .filter(|(h, _)| h.contains(y))
                .map(|(_, &m)| m),
        )
    }
}

/// Generalization probabilities over an ordered probe list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BayesCurve {
    pub probes: Vec<f64>,
    pub values: Vec<f64>,
}

/// Element-wise generalization probability over `probes`.
pub fn bayes_curve(
    space: &HypothesisSpace,
    examples: &[f64],
    probes: &[f64],
) -> Result<BayesCurve> {
    if probes.is_empty() {
        return Err(Error::EmptyProbes);
    }
    let posterior = Posterior::uniform_prior(space, examples)?;
    let values = probes
        .iter()
        .map(|&y| posterior.generalization_probability(y))
        .collect();
    Ok(BayesCurve {
        probes: probes.to_vec(),
        values,
    })
}

/// Compensated summation, so partitioned enumeration stays within the
/// normalization tolerance.
fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}
