use crate::data::Dataset;
use crate::error::Result;
use crate::risk::{check_etas, LinearClassifier};

use super::simplex::{simplex_solve, Constraint, LpProblem, Relation};
use super::SolverConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct HingeSolution {
    pub classifier: LinearClassifier,
    /// Optimal (expected noisy) hinge risk.
    pub objective: f64,
}

/// Linear program whose optimum is the (expected noisy) hinge risk.
///
/// Variables are `w` (free), `b` (free), `ξ_i >= 0` for every point and
/// `ζ_i >= 0` for every point with `η_i > 0`:
///
/// ```text
/// min  Σ p_i [(1-η_i) ξ_i + η_i ζ_i]
/// s.t. ξ_i >= 1 - y_i (wᵀx_i + b)
///      ζ_i >= 1 + y_i (wᵀx_i + b)
/// ```
///
/// Points without flip probability get no `ζ` column, since its cost is zero.
pub fn hinge_lp(data: &Dataset, etas: Option<&[f64]>) -> Result<LpProblem> {
    if let Some(e) = etas {
        check_etas(data, e)?;
    }
    let d = data.dim();
    let n = data.len();
    let flipping: Vec<usize> = (0..n).filter(|&i| etas.is_some_and(|e| e[i] > 0.0)).collect();
    let nvars = d + 1 + n + flipping.len();

    let mut objective = vec![0.0; nvars];
    for (i, &p) in data.weights().iter().enumerate() {
        let eta = etas.map_or(0.0, |e| e[i]);
        objective[d + 1 + i] = p * (1.0 - eta);
    }
    for (k, &i) in flipping.iter().enumerate() {
        objective[d + 1 + n + k] = data.weights()[i] * etas.expect("flipping implies etas")[i];
    }

    let mut constraints = Vec::with_capacity(n + flipping.len());
    let row = |i: usize, sign: f64, slack_col: usize| {
        let y = data.label(i).value();
        let mut coeffs = vec![0.0; nvars];
        for (k, xk) in data.point(i).iter().enumerate() {
            coeffs[k] = sign * y * xk;
        }
        coeffs[d] = sign * y;
        coeffs[slack_col] = 1.0;
        Constraint::new(coeffs, Relation::Ge, 1.0)
    };
    for i in 0..n {
        constraints.push(row(i, 1.0, d + 1 + i));
    }
    for (k, &i) in flipping.iter().enumerate() {
        constraints.push(row(i, -1.0, d + 1 + n + k));
    }

    let mut lower_bounds = vec![None; d + 1];
    lower_bounds.extend(std::iter::repeat_n(Some(0.0), n + flipping.len()));
    Ok(LpProblem {
        objective,
        constraints,
        lower_bounds,
    })
}

/// Minimizes the (expected noisy) hinge risk by solving [`hinge_lp`].
///
/// The optimum is often a whole face of the feasible region; the returned
/// classifier is whichever vertex the simplex method reaches. The
/// configuration is accepted for interface symmetry with the other solvers;
/// the simplex method needs no tuning.
pub fn minimize_hinge(data: &Dataset, etas: Option<&[f64]>, _config: &SolverConfig) -> Result<HingeSolution> {
    let lp = hinge_lp(data, etas)?;
    let solution = simplex_solve(&lp)?;
    let d = data.dim();
    let classifier = LinearClassifier::new(solution.x[..d].to_vec(), solution.x[d])?;
    Ok(HingeSolution {
        classifier,
        objective: solution.objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{example3_dataset, iris_dataset};
    use crate::risk::{accuracy, empirical_risk, expected_noisy_risk, LossKind};

    #[test]
    fn example3_clean() {
        let d = example3_dataset();
        let s = minimize_hinge(&d, None, &SolverConfig::default()).unwrap();
        assert!(s.objective.abs() < 1e-12);
        assert_eq!(accuracy(&s.classifier, &d).unwrap(), 1.0);
        // the reference optimum is one point of the optimal face
        let reference = LinearClassifier::new(vec![54.7738], -571.221).unwrap();
        assert_eq!(empirical_risk(&reference, &d, LossKind::Hinge).unwrap(), 0.0);
    }

    #[test]
    fn example3_noisy() {
        let d = example3_dataset();
        let etas = [0.3; 3];
        let s = minimize_hinge(&d, Some(&etas), &SolverConfig::default()).unwrap();
        assert_eq!(s.classifier.misclassified(&d).unwrap(), [1]);
        // at (1/3, -8/3): [0.7·(5/3) + 0.3·(2 + 1/3 + 2)] / 3 = 2.4667 / 3
        let at_reference = LinearClassifier::new(vec![1.0 / 3.0], -8.0 / 3.0).unwrap();
        let value = expected_noisy_risk(&at_reference, &d, &etas, LossKind::Hinge).unwrap();
        assert!((value - 0.822_222_222_222).abs() < 1e-9);
        assert!(s.objective <= value + 1e-9);
        assert!((s.objective - 2.4667 / 3.0).abs() < 1e-4);
        let rounded = LinearClassifier::new(vec![0.3333], -2.6667).unwrap();
        assert!(s.objective <= expected_noisy_risk(&rounded, &d, &etas, LossKind::Hinge).unwrap() + 1e-9);
        // objective agrees with the risk at the returned classifier
        let at_solution = expected_noisy_risk(&s.classifier, &d, &etas, LossKind::Hinge).unwrap();
        assert!((at_solution - s.objective).abs() < 1e-9);
    }

    #[test]
    fn iris_clean_is_separated() {
        let d = iris_dataset();
        let s = minimize_hinge(&d, None, &SolverConfig::default()).unwrap();
        assert!(s.objective.abs() < 1e-9);
        assert_eq!(accuracy(&s.classifier, &d).unwrap(), 1.0);
    }
}
