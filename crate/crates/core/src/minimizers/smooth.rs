//! Exponential and log risk minimization.

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::risk::{check_etas, expected_noisy_risk, sigmoid, LinearClassifier, LossKind};

use super::linalg::{dot, norm, solve_linear_system, Matrix};
use super::SolverConfig;

/// First and second derivative of `(1-η) L(s, y) + η L(s, -y)` in the score.
fn score_derivatives(kind: LossKind, score: f64, label: Label, eta: f64) -> (f64, f64) {
    let y = label.value();
    // L(s, y) = ψ(-y s); returns (ψ'(m), ψ''(m))
    let psi = |m: f64| match kind {
        LossKind::Exponential => {
            let e = m.exp();
            (e, e)
        }
        LossKind::Log => {
            let s = sigmoid(m);
            (s, s * (1.0 - s))
        }
        _ => unreachable!("only smooth losses reach here"),
    };
    let (d_keep, h_keep) = psi(-y * score);
    let mut first = -y * (1.0 - eta) * d_keep;
    let mut second = (1.0 - eta) * h_keep;
    if eta > 0.0 {
        let (d_flip, h_flip) = psi(y * score);
        first += y * eta * d_flip;
        second += eta * h_flip;
    }
    (first, second)
}

fn objective(f: &LinearClassifier, data: &Dataset, etas: &[f64], kind: LossKind) -> f64 {
    expected_noisy_risk(f, data, etas, kind).unwrap_or(f64::INFINITY)
}

/// Gradient of the (expected noisy) smooth risk with respect to `[w, b]`.
pub fn smooth_gradient(f: &LinearClassifier, data: &Dataset, etas: Option<&[f64]>, kind: LossKind) -> Result<Vec<f64>> {
    require_smooth(kind)?;
    f.check_dim(data)?;
    let etas = resolve_etas(data, etas)?;
    let mut g = vec![0.0; data.dim() + 1];
    for ((x, y, p), &eta) in data.iter().zip(&etas) {
        let (d1, _) = score_derivatives(kind, f.score(x), y, eta);
        for k in 0..x.len() {
            g[k] += p * d1 * x[k];
        }
        g[x.len()] += p * d1;
    }
    Ok(g)
}

fn require_smooth(kind: LossKind) -> Result<()> {
    match kind {
        LossKind::Exponential | LossKind::Log => Ok(()),
        other => Err(Error::InvalidConfig(format!(
            "{other} loss is not handled by the smooth solver"
        ))),
    }
}

fn resolve_etas(data: &Dataset, etas: Option<&[f64]>) -> Result<Vec<f64>> {
    match etas {
        Some(e) => {
            check_etas(data, e)?;
            Ok(e.to_vec())
        }
        None => Ok(vec![0.0; data.len()]),
    }
}

/// If every label that carries loss mass points the same way, the risk keeps
/// decreasing as the bias runs off to infinity.
fn check_bounded(data: &Dataset, etas: &[f64], kind: LossKind) -> Result<()> {
    let mut seen = [false; 2];
    for (y, &eta) in data.labels().iter().zip(etas) {
        seen[usize::from(*y == Label::Positive)] = true;
        if eta > 0.0 {
            seen[usize::from(*y != Label::Positive)] = true;
        }
    }
    if seen[0] && seen[1] {
        Ok(())
    } else {
        Err(Error::NoFiniteMinimizer(format!(
            "the bias: every weighted label has the same sign, so {kind} risk tends to 0 without attaining it"
        )))
    }
}

/// Minimizes the exponential or log risk over linear classifiers.
///
/// With `etas` the expected noisy risk is minimized. With `fix_w` only the
/// bias is optimized, by bisection on the derivative, which is strictly
/// increasing in the bias. Otherwise a damped Newton method with Armijo
/// backtracking runs from the origin until the gradient norm drops to
/// `config.tol`.
///
/// On linearly separable data the clean risk has no minimizer; the solver
/// then stops once the gradient is below tolerance, at a separating
/// classifier of large norm.
pub fn minimize_smooth_convex(
    data: &Dataset,
    kind: LossKind,
    etas: Option<&[f64]>,
    fix_w: Option<&[f64]>,
    config: &SolverConfig,
) -> Result<LinearClassifier> {
    require_smooth(kind)?;
    config.validate()?;
    let etas = resolve_etas(data, etas)?;
    check_bounded(data, &etas, kind)?;
    match fix_w {
        Some(w) => {
            if w.len() != data.dim() {
                return Err(Error::DimensionMismatch {
                    expected: data.dim(),
                    found: w.len(),
                });
            }
            minimize_bias(data, kind, &etas, w, config)
        }
        None => newton(data, kind, &etas, config),
    }
}

fn minimize_bias(
    data: &Dataset,
    kind: LossKind,
    etas: &[f64],
    w: &[f64],
    config: &SolverConfig,
) -> Result<LinearClassifier> {
    let projections: Vec<f64> = data.points().iter().map(|x| dot(w, x)).collect();
    let derivative = |b: f64| -> f64 {
        projections
            .iter()
            .zip(data.labels())
            .zip(data.weights())
            .zip(etas)
            .map(|(((s, &y), p), &eta)| p * score_derivatives(kind, s + b, y, eta).0)
            .sum()
    };

    // bracket the root of the increasing derivative
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut step = 1.0;
    let mut expansions = 0;
    while derivative(lo) > 0.0 || derivative(hi) < 0.0 {
        if derivative(lo) > 0.0 {
            hi = lo;
            lo -= step;
        } else {
            lo = hi;
            hi += step;
        }
        step *= 2.0;
        expansions += 1;
        if expansions > 60 || !derivative(lo).is_finite() || !derivative(hi).is_finite() {
            return Err(Error::NoFiniteMinimizer(format!(
                "the bias: no sign change of the derivative in [{lo:e}, {hi:e}]"
            )));
        }
    }

    for _ in 0..config.max_iters {
        let mid = 0.5 * (lo + hi);
        let g = derivative(mid);
        if g.abs() <= config.tol || mid <= lo || mid >= hi {
            return LinearClassifier::new(w.to_vec(), mid);
        }
        if g > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    Err(Error::NotConverged {
        iterations: config.max_iters,
        residual: derivative(mid).abs(),
    })
}

fn newton(data: &Dataset, kind: LossKind, etas: &[f64], config: &SolverConfig) -> Result<LinearClassifier> {
    let n = data.dim() + 1;
    let mut params = vec![0.0; n];
    let mut current = LinearClassifier::from_augmented(params.clone())?;
    let mut value = objective(&current, data, etas, kind);
    let mut stalled = 0;

    for _ in 0..config.max_iters {
        let mut grad = vec![0.0; n];
        let mut hess = Matrix::zeros(n, n);
        for ((x, y, p), &eta) in data.iter().zip(etas) {
            let (d1, d2) = score_derivatives(kind, current.score(x), y, eta);
            let mut xt = x.to_vec();
            xt.push(1.0);
            for k in 0..n {
                grad[k] += p * d1 * xt[k];
            }
            hess.add_outer(&xt, p * d2);
        }
        let gnorm = norm(&grad);
        if gnorm <= config.tol {
            return Ok(current);
        }

        let neg_grad: Vec<f64> = grad.iter().map(|g| -g).collect();
        let mut damping = 0.0;
        let scale = hess.max_abs().max(gnorm);
        let mut accepted = None;
        for _ in 0..40 {
            let mut damped = hess.clone();
            for k in 0..n {
                damped[(k, k)] += damping;
            }
            let direction = match solve_linear_system(&damped, &neg_grad) {
                Ok(dir) if dot(&dir, &grad) < 0.0 => dir,
                _ => {
                    damping = if damping == 0.0 { 1e-10 * scale } else { damping * 10.0 };
                    continue;
                }
            };
            let slope = dot(&direction, &grad);
            let mut t = 1.0;
            for _ in 0..60 {
                let trial: Vec<f64> = params.iter().zip(&direction).map(|(a, d)| a + t * d).collect();
                if let Ok(candidate) = LinearClassifier::from_augmented(trial.clone()) {
                    let v = objective(&candidate, data, etas, kind);
                    if v <= value + 1e-4 * t * slope {
                        accepted = Some((trial, candidate, v));
                        break;
                    }
                }
                t *= 0.5;
            }
            if accepted.is_some() {
                break;
            }
            damping = if damping == 0.0 { 1e-10 * scale } else { damping * 10.0 };
        }

        let Some((trial, candidate, v)) = accepted else {
            return Err(Error::NotConverged {
                iterations: 0,
                residual: gnorm,
            });
        };
        // objective no longer moves in the last representable digits
        if value - v <= 1e-15 * value.abs() {
            stalled += 1;
            if stalled >= 3 {
                return Ok(candidate);
            }
        } else {
            stalled = 0;
        }
        params = trial;
        current = candidate;
        value = v;
    }
    let residual = norm(&smooth_gradient(&current, data, Some(etas), kind)?);
    Err(Error::NotConverged {
        iterations: config.max_iters,
        residual,
    })
}
