//! Risk minimizers for each loss.
//!
//! | loss        | minimizer                                   |
//! |-------------|---------------------------------------------|
//! | squared     | normal equations ([`least_squares`]), [`fld`] |
//! | exponential | damped Newton / bias bisection ([`minimize_smooth_convex`]) |
//! | log         | same                                        |
//! | hinge       | two-phase simplex on the LP form ([`minimize_hinge`]) |
//! | 0-1         | exact hyperplane enumeration for `d <= 3` ([`minimize_zero_one_exact`]) and simulated annealing ([`minimize_zero_one_stochastic`]) |
//!
//! Every minimizer accepts optional per-point flip probabilities, in which
//! case it minimizes the expected noisy risk instead of the clean risk.

mod fld;
mod hinge;
mod least_squares;
pub mod linalg;
pub mod simplex;
mod smooth;
mod zero_one;

pub use fld::{canonical_direction, fld, fld_expected_direction};
pub use hinge::{hinge_lp, minimize_hinge, HingeSolution};
pub use least_squares::{least_squares, moment_system};
pub use linalg::{solve_linear_system, Matrix};
pub use simplex::{simplex_solve, Constraint, LpProblem, LpSolution, Relation};
pub use smooth::{minimize_smooth_convex, smooth_gradient};
pub use zero_one::{minimize_zero_one_exact, minimize_zero_one_stochastic, EXACT_MAX_DIM, EXACT_MAX_POINTS};

use crate::error::{Error, Result};

/// Knobs shared by the iterative solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Gradient-norm threshold for the convex solvers.
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
    /// Initial temperature of the annealing schedule.
    pub initial_temperature: f64,
    /// Geometric cooling factor per iteration, in `(0, 1)`.
    pub decay: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 20_000,
            tol: 1e-9,
            restarts: 5,
            seed: 0,
            initial_temperature: 1.0,
            decay: 0.995,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "decay must lie in (0, 1), got {}",
                self.decay
            )));
        }
        if self.initial_temperature.is_nan() || self.initial_temperature <= 0.0 {
            return Err(Error::InvalidConfig("initial temperature must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = [
            SolverConfig {
                tol: 0.0,
                ..Default::default()
            },
            SolverConfig {
                restarts: 0,
                ..Default::default()
            },
            SolverConfig {
                decay: 1.0,
                ..Default::default()
            },
            SolverConfig {
                decay: 0.0,
                ..Default::default()
            },
            SolverConfig {
                max_iters: 0,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }
}
