//! Worked-example checks, randomized property checks and the Iris
//! noise-injection study.

mod report;
mod study;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::minimizers::{
    fld, least_squares, minimize_hinge, minimize_smooth_convex, minimize_zero_one_stochastic, SolverConfig,
};
use crate::risk::{LinearClassifier, LossKind};

pub use report::{Cell, ExperimentReport};
pub use study::{default_noise_list, run_dataset, run_iris, trial_seed, trial_stream, IRIS_CONVENTION};
pub use verify::{
    oracle_equivalence, random_dataset, separable_dataset, verify_examples, verify_theorems, Check, CheckReport,
};

/// A training algorithm compared in the noise study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Simulated annealing on the 0-1 risk.
    ZeroOne,
    /// Unregularized hinge risk, solved as a linear program.
    Hinge,
    LeastSquares,
    /// Logistic regression (log loss), unregularized.
    Log,
    Fld,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::ZeroOne,
        Algorithm::Hinge,
        Algorithm::LeastSquares,
        Algorithm::Log,
        Algorithm::Fld,
    ];

    /// Identifier used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ZeroOne => "zero-one",
            Algorithm::Hinge => "hinge",
            Algorithm::LeastSquares => "least-squares",
            Algorithm::Log => "log",
            Algorithm::Fld => "fld",
        }
    }

    /// Column heading in the human-readable table.
    pub fn title(self) -> &'static str {
        match self {
            Algorithm::ZeroOne => "0-1 (annealing)",
            Algorithm::Hinge => "hinge risk (LP)",
            Algorithm::LeastSquares => "least squares",
            Algorithm::Log => "log loss",
            Algorithm::Fld => "FLD",
        }
    }

    /// Trains on `data` (whose labels may be noisy). Only the 0-1 search
    /// consumes randomness, from `config.seed`.
    pub fn train(self, data: &Dataset, config: &SolverConfig) -> Result<LinearClassifier> {
        match self {
            Algorithm::ZeroOne => minimize_zero_one_stochastic(data, config),
            Algorithm::Hinge => minimize_hinge(data, None, config).map(|s| s.classifier),
            Algorithm::LeastSquares => least_squares(data, true, None),
            Algorithm::Log => minimize_smooth_convex(data, LossKind::Log, None, None, config),
            Algorithm::Fld => fld(data),
        }
    }

    /// Parses a comma-separated list such as `zero-one,hinge`.
    pub fn parse_list(text: &str) -> Result<Vec<Algorithm>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let a: Algorithm = part.parse()?;
            if !out.contains(&a) {
                out.push(a);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidConfig("empty algorithm list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::InvalidConfig(format!(
                "unknown algorithm '{s}' (expected one of {})",
                names.join(", ")
            ))
        })
    }
}

/// Outcome of one (noise setting, trial, algorithm) run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub algorithm: Algorithm,
    /// Textual form of the noise setting.
    pub noise: String,
    pub trial: usize,
    /// Seed handed to the solver for this trial.
    pub seed: u64,
    /// Accuracy on the clean labels, absent if training failed.
    pub accuracy: Option<f64>,
    pub error: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("svm".parse::<Algorithm>().is_err());
    }

    #[test]
    fn algorithm_lists() {
        assert_eq!(
            Algorithm::parse_list("hinge, zero-one,hinge").unwrap(),
            vec![Algorithm::Hinge, Algorithm::ZeroOne]
        );
        assert!(Algorithm::parse_list(" , ").is_err());
        assert!(Algorithm::parse_list("hinge,bogus").is_err());
    }

    #[test]
    fn hinge_column_is_not_called_svm() {
        assert_eq!(Algorithm::Hinge.title(), "hinge risk (LP)");
    }
}
