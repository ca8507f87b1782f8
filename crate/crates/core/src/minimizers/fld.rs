use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::risk::LinearClassifier;

use super::linalg::{dot, norm, solve_linear_system, Matrix};

/// Unit-norm rescaling of `v` whose first nonzero component is positive.
pub fn canonical_direction(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    if n == 0.0 {
        return v.to_vec();
    }
    let sign = v.iter().find(|c| **c != 0.0).map_or(1.0, |c| c.signum());
    v.iter().map(|c| sign * c / n).collect()
}

struct ClassMoments {
    mass: [f64; 2],
    means: [Vec<f64>; 2],
    grand_mean: Vec<f64>,
}

fn class_index(label: Label) -> usize {
    match label {
        Label::Positive => 0,
        Label::Negative => 1,
    }
}

fn class_moments(data: &Dataset) -> Result<ClassMoments> {
    let d = data.dim();
    let mut mass = [0.0; 2];
    let mut means = [vec![0.0; d], vec![0.0; d]];
    let mut grand_mean = vec![0.0; d];
    for (x, y, p) in data.iter() {
        let c = class_index(y);
        mass[c] += p;
        for k in 0..d {
            means[c][k] += p * x[k];
            grand_mean[k] += p * x[k];
        }
    }
    if mass.contains(&0.0) {
        return Err(Error::InvalidDataset("FLD needs both classes to be present".into()));
    }
    for c in 0..2 {
        means[c].iter_mut().for_each(|v| *v /= mass[c]);
    }
    Ok(ClassMoments {
        mass,
        means,
        grand_mean,
    })
}

fn within_class_scatter(data: &Dataset, m: &ClassMoments) -> Matrix {
    let d = data.dim();
    let mut sw = Matrix::zeros(d, d);
    for (x, y, p) in data.iter() {
        let mu = &m.means[class_index(y)];
        let centered: Vec<f64> = x.iter().zip(mu).map(|(a, b)| a - b).collect();
        sw.add_outer(&centered, p);
    }
    sw
}

/// Fisher linear discriminant.
///
/// The direction is `S_W⁻¹(μ₊ - μ₋)` (mass-weighted means and within-class
/// scatter), scaled to unit norm and oriented so that the positive class
/// projects higher. The threshold is the grand mean: `b = -wᵀμ`.
pub fn fld(data: &Dataset) -> Result<LinearClassifier> {
    let m = class_moments(data)?;
    let sw = within_class_scatter(data, &m);
    let diff: Vec<f64> = m.means[0].iter().zip(&m.means[1]).map(|(a, b)| a - b).collect();
    let w = solve_linear_system(&sw, &diff)?;
    let n = norm(&w);
    if n == 0.0 {
        return Err(Error::InvalidDataset(
            "class means coincide; FLD direction undefined".into(),
        ));
    }
    let w: Vec<f64> = w.iter().map(|v| v / n).collect();
    let b = -dot(&w, &m.grand_mean);
    LinearClassifier::new(w, b)
}

/// Canonical FLD direction in the expected noisy form.
///
/// Flipping labels with class-conditional rates (`eta_pos` for `+1` points,
/// `eta_neg` for `-1` points) replaces each class mean by a mixture of both
/// clean means. The squared-risk route with class targets `1/P₊`, `-1/P₋`
/// then solves `S_T w = μ₊^η - μ₋^η`, where the total scatter
/// `S_T = Σ p_i (x_i - μ)(x_i - μ)ᵀ` does not depend on the labels.
pub fn fld_expected_direction(data: &Dataset, eta_pos: f64, eta_neg: f64) -> Result<Vec<f64>> {
    for eta in [eta_pos, eta_neg] {
        if !(0.0..0.5).contains(&eta) {
            return Err(Error::InvalidNoise(format!("rate {eta} is outside [0, 0.5)")));
        }
    }
    let m = class_moments(data)?;
    let d = data.dim();
    let [p_pos, p_neg] = m.mass;
    let [mu_pos, mu_neg] = &m.means;

    // noisy +1 class: kept positives and flipped negatives
    let keep_pos = (1.0 - eta_pos) * p_pos;
    let flip_neg = eta_neg * p_neg;
    let keep_neg = (1.0 - eta_neg) * p_neg;
    let flip_pos = eta_pos * p_pos;
    let noisy_pos: Vec<f64> = (0..d)
        .map(|k| (keep_pos * mu_pos[k] + flip_neg * mu_neg[k]) / (keep_pos + flip_neg))
        .collect();
    let noisy_neg: Vec<f64> = (0..d)
        .map(|k| (keep_neg * mu_neg[k] + flip_pos * mu_pos[k]) / (keep_neg + flip_pos))
        .collect();

    let mut total_scatter = Matrix::zeros(d, d);
    for (x, _, p) in data.iter() {
        let centered: Vec<f64> = x.iter().zip(&m.grand_mean).map(|(a, b)| a - b).collect();
        total_scatter.add_outer(&centered, p);
    }
    let rhs: Vec<f64> = noisy_pos.iter().zip(&noisy_neg).map(|(a, b)| a - b).collect();
    let w = solve_linear_system(&total_scatter, &rhs)?;
    Ok(canonical_direction(&w))
}
