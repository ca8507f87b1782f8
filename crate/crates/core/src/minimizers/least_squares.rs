use crate::data::Dataset;
use crate::error::Result;
use crate::risk::{check_etas, LinearClassifier};

use super::linalg::{solve_linear_system, Matrix};

fn features(x: &[f64], fit_bias: bool) -> Vec<f64> {
    let mut v = x.to_vec();
    if fit_bias {
        v.push(1.0);
    }
    v
}

/// Normal equations of the (expected noisy) squared risk:
/// `E[x̃ x̃ᵀ] w̃ = E[(1 - 2η_x) x̃ y_x]`, expectations under the dataset masses.
/// Without `fit_bias` the augmentation is dropped and the fit passes through
/// the origin.
pub fn moment_system(data: &Dataset, fit_bias: bool, etas: Option<&[f64]>) -> Result<(Matrix, Vec<f64>)> {
    if let Some(etas) = etas {
        check_etas(data, etas)?;
    }
    let n = data.dim() + usize::from(fit_bias);
    let mut moments = Matrix::zeros(n, n);
    let mut rhs = vec![0.0; n];
    for (i, (x, y, p)) in data.iter().enumerate() {
        let xt = features(x, fit_bias);
        moments.add_outer(&xt, p);
        let shrink = etas.map_or(1.0, |e| 1.0 - 2.0 * e[i]);
        for (r, v) in rhs.iter_mut().zip(&xt) {
            *r += p * shrink * y.value() * v;
        }
    }
    Ok((moments, rhs))
}

/// Minimizer of the squared risk over linear classifiers.
///
/// With `etas` the expected noisy squared risk is minimized; for uniform
/// `η` the result is exactly `(1 - 2η)` times the clean solution.
pub fn least_squares(data: &Dataset, fit_bias: bool, etas: Option<&[f64]>) -> Result<LinearClassifier> {
    let (moments, rhs) = moment_system(data, fit_bias, etas)?;
    let solution = solve_linear_system(&moments, &rhs)?;
    if fit_bias {
        LinearClassifier::from_augmented(solution)
    } else {
        LinearClassifier::new(solution, 0.0)
    }
}
