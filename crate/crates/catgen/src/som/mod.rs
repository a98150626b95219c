//! Self-organizing map: hexagonal grid, seeded out-of-range initialization,
//! best-matching-unit selection, and the online training rule.

mod grid;

pub use grid::{grid_distance, GridCoord};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stimulus::{euclidean, uniform_dim, Stimulus};

/// Seed salt for the optional presentation-order shuffle, so the shuffle
/// stream is decoupled from the weight-initialization stream.
const SHUFFLE_SEED_SALT: u64 = 0x5f3759df;

/// Map geometry and training schedule.
///
/// The defaults are the reference setup: a 3x3 hexagonal map, learning rate
/// 0.5, Gaussian neighborhood of width 0.5, one pass over the training set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SomConfig {
    pub rows: usize,
    pub cols: usize,
    /// Learning rate in (0, 1].
    pub eta: f64,
    /// Width of the Gaussian neighborhood, positive.
    pub sigma: f64,
    /// Passes over the training set.
    pub epochs: usize,
    pub seed: u64,
    /// Gap between the per-dimension data maximum and the initialization band.
    pub init_offset: f64,
    /// Width of the initialization band.
    pub init_margin: f64,
    /// Present stimuli in a seeded random order instead of the listed order.
    pub shuffle: bool,
    /// Per-epoch multiplicative decay of eta, in (0, 1]. Exploration only.
    pub eta_decay: f64,
    /// Per-epoch multiplicative decay of sigma, in (0, 1]. Exploration only.
    pub sigma_decay: f64,
}

impl Default for SomConfig {
    fn default() -> Self {
        SomConfig {
            rows: 3,
            cols: 3,
            eta: 0.5,
            sigma: 0.5,
            epochs: 1,
            seed: 0,
            init_offset: 10.0,
            init_margin: 10.0,
            shuffle: false,
            eta_decay: 1.0,
            sigma_decay: 1.0,
        }
    }
}

impl SomConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidConfig("grid must have at least one unit".into()));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eta must lie in (0, 1], got {}",
                self.eta
            )));
        }
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        if !self.init_offset.is_finite() || self.init_offset < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "init_offset must be non-negative, got {}",
                self.init_offset
            )));
        }
        if !self.init_margin.is_finite() || self.init_margin <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "init_margin must be positive, got {}",
                self.init_margin
            )));
        }
        for (name, value) in [("eta_decay", self.eta_decay), ("sigma_decay", self.sigma_decay)] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must lie in (0, 1], got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// One map unit: a grid position and its weight vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Unit {
    pub coord: GridCoord,
    pub weight: Vec<f64>,
}

/// A self-organizing map: grid geometry plus one weight vector per unit,
/// stored row-major. A `Map` is a plain value with no hidden shared state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Map {
    config: SomConfig,
    dim: usize,
    units: Vec<Unit>,
}

/// Gaussian neighborhood exp(-d^2 / (2 sigma^2)) for a grid distance `d`.
///
/// Returns a value in (0, 1], equal to 1 exactly when the distance is zero,
/// strictly decreasing in the distance.
pub fn neighborhood(grid_dist: f64, sigma: f64) -> Result<f64> {
    if sigma <= 0.0 || sigma.is_nan() {
        return Err(Error::NonPositiveSigma(sigma));
    }
    Ok(gaussian(grid_dist, sigma))
}

#[inline]
fn gaussian(grid_dist: f64, sigma: f64) -> f64 {
    (-grid_dist * grid_dist / (2.0 * sigma * sigma)).exp()
}

impl Map {
    /// Builds a map with weights drawn outside the training data's range.
    ///
    /// Every weight component in dimension k is uniform on
    /// (hi_k + init_offset, hi_k + init_offset + init_margin], where hi_k is
    /// the per-dimension maximum over the training set. Deterministic in
    /// `config.seed`.
    pub fn init(config: &SomConfig, training_set: &[Stimulus]) -> Result<Map> {
        config.validate()?;
        let dim = uniform_dim(training_set)?;

        let mut hi = vec![f64::NEG_INFINITY; dim];
        for s in training_set {
            for (h, &v) in hi.iter_mut().zip(s.values()) {
                if v > *h {
                    *h = v;
                }
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let units = (0..config.rows * config.cols)
            .map(|idx| {
                let coord = GridCoord::new(idx / config.cols, idx % config.cols);
                let weight = hi
                    .iter()
                    .map(|&h| {
                        // gen::<f64>() is in [0, 1); 1 - u maps it to (0, 1],
                        // so the band excludes its lower edge.
                        let u: f64 = rng.gen();
                        h + config.init_offset + config.init_margin * (1.0 - u)
                    })
                    .collect();
                Unit { coord, weight }
            })
            .collect();

        Ok(Map {
            config: config.clone(),
            dim,
            units,
        })
    }

    /// Builds a map from explicit weight vectors (row-major), validating
    /// count, dimensionality, and finiteness.
    pub fn with_weights(config: SomConfig, weights: Vec<Vec<f64>>) -> Result<Map> {
        config.validate()?;
        if weights.len() != config.rows * config.cols {
            return Err(Error::InvalidConfig(format!(
                "expected {} weight vectors, got {}",
                config.rows * config.cols,
                weights.len()
            )));
        }
        let dim = weights.first().map(|w| w.len()).unwrap_or(0);
        if dim == 0 {
            return Err(Error::EmptyStimulus);
        }
        let mut units = Vec::with_capacity(weights.len());
        for (idx, weight) in weights.into_iter().enumerate() {
            if weight.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: weight.len(),
                });
            }
            for (k, &v) in weight.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteValue { index: k, value: v });
                }
            }
            units.push(Unit {
                coord: GridCoord::new(idx / config.cols, idx % config.cols),
                weight,
            });
        }
        Ok(Map { config, dim, units })
    }

    pub fn config(&self) -> &SomConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    fn check_dim(&self, x: &Stimulus) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.dim(),
            });
        }
        Ok(())
    }

    /// Index of the unit whose weight vector is Euclidean-closest to `x`.
    /// Ties break toward the lowest row-major index.
    pub fn best_matching_unit(&self, x: &Stimulus) -> Result<usize> {
        self.check_dim(x)?;
        let mut best = 0;
        let mut best_dist = f64::INFINITY;
        for (idx, unit) in self.units.iter().enumerate() {
            let d = euclidean(x.values(), &unit.weight);
            if d < best_dist {
                best = idx;
                best_dist = d;
            }
        }
        Ok(best)
    }

    /// One online update: every unit j moves by
    /// eta * h(d_grid(bmu, j)) * (x - w_j), with the BMU taken from the
    /// pre-update weights.
    pub fn train_step(&mut self, x: &Stimulus, eta: f64, sigma: f64) -> Result<()> {
        self.check_dim(x)?;
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidLearningRate(eta));
        }
        if sigma <= 0.0 || sigma.is_nan() {
            return Err(Error::NonPositiveSigma(sigma));
        }
        let bmu_coord = self.units[self.best_matching_unit(x)?].coord;
        for unit in &mut self.units {
            let h = gaussian(grid_distance(bmu_coord, unit.coord), sigma);
            let step = eta * h;
            for (w, &xv) in unit.weight.iter_mut().zip(x.values()) {
                *w += step * (xv - *w);
            }
        }
        Ok(())
    }

    /// Trains on the whole set: `config.epochs` passes, stimuli in the listed
    /// order (or a seeded shuffle when `config.shuffle` is set), constant eta
    /// and sigma within an epoch. Returns the number of update steps applied.
    pub fn train(&mut self, training_set: &[Stimulus]) -> Result<usize> {
        if training_set.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        for s in training_set {
            self.check_dim(s)?;
        }
        let mut shuffle_rng = self
            .config
            .shuffle
            .then(|| ChaCha8Rng::seed_from_u64(self.config.seed ^ SHUFFLE_SEED_SALT));
        let mut order: Vec<usize> = (0..training_set.len()).collect();
        let mut steps = 0;
        let mut eta = self.config.eta;
        let mut sigma = self.config.sigma;
        for _ in 0..self.config.epochs {
            if let Some(rng) = shuffle_rng.as_mut() {
                use rand::seq::SliceRandom;
                order.shuffle(rng);
            }
            for &i in &order {
                self.train_step(&training_set[i], eta, sigma)?;
                steps += 1;
            }
            eta *= self.config.eta_decay;
            sigma *= self.config.sigma_decay;
        }
        Ok(steps)
    }

    /// Euclidean distance from `x` to its best-matching unit's weight vector.
    pub fn quantization_error(&self, x: &Stimulus) -> Result<f64> {
        let bmu = self.best_matching_unit(x)?;
        Ok(euclidean(x.values(), &self.units[bmu].weight))
    }
}
