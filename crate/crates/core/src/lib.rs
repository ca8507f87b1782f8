//! Risk minimization under label noise.
//!
//! The crate models a clean (unobservable) training set, corrupts its labels
//! with per-point flip probabilities, and compares the classifiers obtained by
//! minimizing risk under five loss functions: 0-1, squared, exponential, log
//! and hinge. It contains
//!
//! * [`data`]: datasets, CSV ingestion, the bundled Iris data and the small
//!   worked-example datasets,
//! * [`noise`]: label-noise models and seeded label corruption,
//! * [`risk`]: losses, linear classifiers and the clean / noisy risk functionals,
//! * [`minimizers`]: closed-form, convex, linear-programming and combinatorial
//!   risk minimizers,
//! * [`experiments`]: the worked-example checks, property suites and the Iris
//!   noise-injection study.

pub mod data;
pub mod error;
pub mod experiments;
pub mod minimizers;
pub mod noise;
pub mod risk;
pub mod rng;

pub use data::{Dataset, Label, LabelMapping};
pub use error::{Error, Result};
pub use experiments::{Algorithm, ExperimentReport, TrialRecord};
pub use minimizers::SolverConfig;
pub use noise::{NoiseSpec, NoisyDataset};
pub use risk::{LinearClassifier, LossKind};
