//! Loss functions, linear classifiers and risk functionals.
//!
//! Three risks are computed against a [`Dataset`]'s empirical measure:
//!
//! * the clean risk `R(f) = Σ p_i L(f(x_i), y_i)` ([`empirical_risk`]),
//! * the realized noisy risk, which is `empirical_risk` on a relabelled dataset,
//! * the expected noisy risk
//!   `R^η(f) = Σ p_i [(1-η_i) L(f(x_i), y_i) + η_i L(f(x_i), -y_i)]`
//!   ([`expected_noisy_risk`]), the average over label flips.
//!
//! Flip probabilities are passed as plain per-point slices so that none of
//! this depends on random sampling.

use std::fmt;
use std::str::FromStr;

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};

/// The five losses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LossKind {
    ZeroOne,
    Squared,
    Exponential,
    Log,
    Hinge,
}

impl LossKind {
    pub const ALL: [LossKind; 5] = [
        LossKind::ZeroOne,
        LossKind::Squared,
        LossKind::Exponential,
        LossKind::Log,
        LossKind::Hinge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LossKind::ZeroOne => "zero-one",
            LossKind::Squared => "squared",
            LossKind::Exponential => "exponential",
            LossKind::Log => "log",
            LossKind::Hinge => "hinge",
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LossKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown loss '{s}'")))
    }
}

/// `ln(1 + e^m)` without overflow.
pub(crate) fn softplus(m: f64) -> f64 {
    if m > 0.0 {
        m + (-m).exp().ln_1p()
    } else {
        m.exp().ln_1p()
    }
}

/// Logistic function `1 / (1 + e^{-m})` without overflow.
pub(crate) fn sigmoid(m: f64) -> f64 {
    if m >= 0.0 {
        1.0 / (1.0 + (-m).exp())
    } else {
        let e = m.exp();
        e / (1.0 + e)
    }
}

/// Loss of predicting `score` for a point labelled `label`.
///
/// The 0-1 loss uses `sign(0) = +1`. The exponential loss is returned as
/// computed (it saturates to `+inf` for margins below about -709); the log
/// loss is evaluated in a form that never overflows.
pub fn loss(kind: LossKind, score: f64, label: Label) -> f64 {
    let y = label.value();
    match kind {
        LossKind::ZeroOne => {
            if Label::from_sign(score) == label {
                0.0
            } else {
                1.0
            }
        }
        LossKind::Squared => (score - y) * (score - y),
        LossKind::Exponential => (-y * score).exp(),
        LossKind::Log => softplus(-y * score),
        LossKind::Hinge => (1.0 - y * score).max(0.0),
    }
}

/// `f(x) = w·x + b`, predicting `sign(f(x))` with `sign(0) = +1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearClassifier {
    weights: Vec<f64>,
    bias: f64,
}

impl LinearClassifier {
    pub fn new(weights: Vec<f64>, bias: f64) -> Result<LinearClassifier> {
        if weights.is_empty() {
            return Err(Error::InvalidConfig("classifier needs at least one weight".into()));
        }
        if weights.iter().any(|w| !w.is_finite()) || !bias.is_finite() {
            return Err(Error::InvalidConfig("classifier has non-finite parameters".into()));
        }
        Ok(LinearClassifier { weights, bias })
    }

    /// From an augmented vector `[w, b]`.
    pub fn from_augmented(mut params: Vec<f64>) -> Result<LinearClassifier> {
        let bias = params
            .pop()
            .ok_or_else(|| Error::InvalidConfig("empty parameter vector".into()))?;
        LinearClassifier::new(params, bias)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `[w, b]`.
    pub fn augmented(&self) -> Vec<f64> {
        let mut v = self.weights.clone();
        v.push(self.bias);
        v
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.weights.len());
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    pub fn predict(&self, x: &[f64]) -> Label {
        Label::from_sign(self.score(x))
    }

    pub fn check_dim(&self, data: &Dataset) -> Result<()> {
        if data.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: data.dim(),
            });
        }
        Ok(())
    }

    /// Indices of points whose label disagrees with the prediction, i.e. `S(f)`.
    pub fn misclassified(&self, data: &Dataset) -> Result<Vec<usize>> {
        Ok(self
            .error_mask(data)?
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .map(|(i, _)| i)
            .collect())
    }

    pub fn error_mask(&self, data: &Dataset) -> Result<Vec<bool>> {
        self.check_dim(data)?;
        Ok(data.iter().map(|(x, y, _)| self.predict(x) != y).collect())
    }
}

impl fmt::Display for LinearClassifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w=[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w:.6}")?;
        }
        write!(f, "], b={:.6}", self.bias)
    }
}

/// Checks that `etas` has one rate in `[0, 0.5)` per point.
pub fn check_etas(data: &Dataset, etas: &[f64]) -> Result<()> {
    if etas.len() != data.len() {
        return Err(Error::DimensionMismatch {
            expected: data.len(),
            found: etas.len(),
        });
    }
    if let Some((i, eta)) = etas.iter().enumerate().find(|(_, e)| !(**e >= 0.0 && **e < 0.5)) {
        return Err(Error::InvalidNoise(format!(
            "flip probability {eta} at point {i} is outside [0, 0.5)"
        )));
    }
    Ok(())
}

/// `Σ p_i L(f(x_i), y_i)`.
pub fn empirical_risk(f: &LinearClassifier, data: &Dataset, kind: LossKind) -> Result<f64> {
    f.check_dim(data)?;
    Ok(data.iter().map(|(x, y, p)| p * loss(kind, f.score(x), y)).sum())
}

/// Mass of the correctly classified points.
pub fn accuracy(f: &LinearClassifier, data: &Dataset) -> Result<f64> {
    f.check_dim(data)?;
    let (mut right, mut wrong) = (0.0, 0.0);
    for (x, y, p) in data.iter() {
        if f.predict(x) == y {
            right += p;
        } else {
            wrong += p;
        }
    }
    // normalized so that a perfect classifier scores exactly 1
    Ok(right / (right + wrong))
}

/// `Σ p_i [(1-η_i) L(f(x_i), y_i) + η_i L(f(x_i), -y_i)]`.
pub fn expected_noisy_risk(f: &LinearClassifier, data: &Dataset, etas: &[f64], kind: LossKind) -> Result<f64> {
    f.check_dim(data)?;
    check_etas(data, etas)?;
    Ok(data
        .iter()
        .zip(etas)
        .map(|((x, y, p), &eta)| {
            let s = f.score(x);
            let kept = loss(kind, s, y);
            // avoid 0 * inf when a flip is impossible
            let flipped = if eta > 0.0 {
                eta * loss(kind, s, y.flipped())
            } else {
                0.0
            };
            p * ((1.0 - eta) * kept + flipped)
        })
        .sum())
}

/// Splits the expected noisy 0-1 risk into `Σ p_i η_i` and
/// `Σ_{i ∈ S(f)} p_i (1 - 2η_i)`.
pub fn zero_one_noisy_decomposition(f: &LinearClassifier, data: &Dataset, etas: &[f64]) -> Result<(f64, f64)> {
    check_etas(data, etas)?;
    let errors = f.error_mask(data)?;
    let base = data.weights().iter().zip(etas).map(|(p, e)| p * e).sum();
    let excess = data
        .weights()
        .iter()
        .zip(etas)
        .zip(&errors)
        .filter(|(_, &err)| err)
        .map(|((p, e), _)| p * (1.0 - 2.0 * e))
        .sum();
    Ok((base, excess))
}

/// `R^η(f1) - R^η(f2)` under 0-1 loss, summed only over the points on which
/// the two classifiers disagree.
pub fn risk_difference(f1: &LinearClassifier, f2: &LinearClassifier, data: &Dataset, etas: &[f64]) -> Result<f64> {
    check_etas(data, etas)?;
    let e1 = f1.error_mask(data)?;
    let e2 = f2.error_mask(data)?;
    let mut only_first = 0.0;
    let mut only_second = 0.0;
    for (i, (&a, &b)) in e1.iter().zip(&e2).enumerate() {
        let mass = data.weights()[i] * (1.0 - 2.0 * etas[i]);
        match (a, b) {
            (true, false) => only_first += mass,
            (false, true) => only_second += mass,
            _ => {}
        }
    }
    Ok(only_first - only_second)
}
