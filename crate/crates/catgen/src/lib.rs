//! Category generalization on self-organizing maps, with a Bayesian
//! reference model and prototype/exemplar baselines.
//!
//! The library trains small hexagonal maps on a handful of positive
//! examples, builds the map's category representation (the best-matching
//! units of the examples plus a tolerance level), and measures
//! generalization to new stimuli through the relative-distance measure.
//! A brute-force Bayesian model over interval hypotheses with a
//! size-principle likelihood serves as the reference, and the
//! [`experiment`] module runs seeded ensembles of the built-in conditions
//! and checks the comparative effects (numerosity, variability,
//! representation-accuracy ordering, set-position sensitivity).

pub mod baselines;
pub mod bayes;
mod error;
pub mod experiment;
pub mod generalization;
pub mod som;
mod stimulus;

pub use error::{Error, Result};
pub use stimulus::Stimulus;
