//! 0-1 risk minimization over linear classifiers.
//!
//! The 0-1 risk is piecewise constant in `(w, b)`: it only changes when the
//! hyperplane crosses a data point. [`minimize_zero_one_exact`] exploits this
//! by enumerating hyperplanes through every `d` points, which is exhaustive
//! for small `d` and `N`. [`minimize_zero_one_stochastic`] is a simulated
//! annealing search that scales to any dimension.

use std::cmp::Ordering;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::risk::{check_etas, LinearClassifier};
use crate::rng::stream_rng;

use super::linalg::{determinant, norm, solve_linear_system, Matrix};
use super::SolverConfig;

pub const EXACT_MAX_DIM: usize = 3;
pub const EXACT_MAX_POINTS: usize = 200;

const OFFSET_JITTER: f64 = 1e-6;
const ON_PLANE_TOL: f64 = 1e-9;
const RISK_TIE_TOL: f64 = 1e-12;

/// Per-point cost of predicting `+1` and `-1` under the expected noisy 0-1 risk.
fn prediction_costs(data: &Dataset, etas: Option<&[f64]>) -> Vec<[f64; 2]> {
    data.iter()
        .enumerate()
        .map(|(i, (_, y, p))| {
            let eta = etas.map_or(0.0, |e| e[i]);
            let right = p * eta;
            let wrong = p * (1.0 - eta);
            match y {
                Label::Positive => [right, wrong],
                Label::Negative => [wrong, right],
            }
        })
        .collect()
}

fn cost_of(costs: &[f64; 2], score: f64) -> f64 {
    if score >= 0.0 {
        costs[0]
    } else {
        costs[1]
    }
}

fn augmented_score(params: &[f64], x: &[f64]) -> f64 {
    let d = x.len();
    params[..d].iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + params[d]
}

struct Search<'a> {
    data: &'a Dataset,
    costs: Vec<[f64; 2]>,
    best: Option<(f64, Vec<f64>)>,
}

impl Search<'_> {
    fn risk(&self, params: &[f64]) -> f64 {
        self.data
            .points()
            .iter()
            .zip(&self.costs)
            .map(|(x, c)| cost_of(c, augmented_score(params, x)))
            .sum()
    }

    fn consider(&mut self, params: Vec<f64>) {
        if params.iter().any(|v| !v.is_finite()) {
            return;
        }
        let risk = self.risk(&params);
        let replace = match &self.best {
            None => true,
            Some((best_risk, best)) => {
                if risk < best_risk - RISK_TIE_TOL {
                    true
                } else if risk > best_risk + RISK_TIE_TOL {
                    false
                } else {
                    let d = self.data.dim();
                    let (na, nb) = (norm(&params[..d]), norm(&best[..d]));
                    match na.total_cmp(&nb) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => lexicographic(&params, best) == Ordering::Less,
                    }
                }
            }
        };
        if replace {
            self.best = Some((risk, params));
        }
    }

    /// Tries `params` with its offset nudged both ways by less than the
    /// smallest nonzero margin.
    fn consider_jittered(&mut self, params: &[f64], min_margin: f64) {
        let eps = OFFSET_JITTER.min(0.5 * min_margin);
        let d = self.data.dim();
        for shift in [eps, -eps] {
            let mut p = params.to_vec();
            p[d] += shift;
            self.consider(p);
        }
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Next `k`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Hyperplane `[w, b]` through the rows of `m` (`d` rows `[x_j, 1]`), as the
/// generalized cross product of those rows.
fn hyperplane_through(m: &[Vec<f64>]) -> Vec<f64> {
    let d = m.len();
    (0..=d)
        .map(|k| {
            let minor: Vec<Vec<f64>> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != k)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let det = if d == 1 {
                minor[0][0]
            } else {
                determinant(&Matrix::from_rows(&minor).expect("square minor"))
            };
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Minimizes the 0-1 risk (or, with `etas`, the expected noisy 0-1 risk) over
/// linear classifiers by exhaustive enumeration.
///
/// Candidates are: the two constant classifiers; axis-aligned hyperplanes
/// through every point; and for every `d`-subset of points the hyperplane
/// through them, in both orientations. A hyperplane through affinely
/// independent points can be tilted to put each of those points on either
/// side, so each such candidate is tilted to give every touching point its
/// cheaper side while leaving all other points where they were. Every
/// candidate is also tried with its offset nudged by `±1e-6`.
///
/// Ties within `1e-12` go to the smallest `‖w‖`, then to the
/// lexicographically smallest `[w, b]`. Restricted to `d <= 3`, `N <= 200`.
pub fn minimize_zero_one_exact(data: &Dataset, etas: Option<&[f64]>) -> Result<(LinearClassifier, f64)> {
    let d = data.dim();
    let n = data.len();
    if d > EXACT_MAX_DIM || n > EXACT_MAX_POINTS {
        return Err(Error::GuardViolation(format!(
            "exact 0-1 search is limited to d <= {EXACT_MAX_DIM} and N <= {EXACT_MAX_POINTS} (got d = {d}, N = {n})"
        )));
    }
    if let Some(e) = etas {
        check_etas(data, e)?;
    }
    let mut search = Search {
        data,
        costs: prediction_costs(data, etas),
        best: None,
    };

    for b in [1.0, -1.0] {
        let mut p = vec![0.0; d];
        p.push(b);
        search.consider(p);
    }

    let margins = |params: &[f64]| -> (Vec<usize>, f64) {
        let mut touching = Vec::new();
        let mut min_margin = f64::INFINITY;
        for (i, x) in data.points().iter().enumerate() {
            let s = augmented_score(params, x).abs();
            if s <= ON_PLANE_TOL {
                touching.push(i);
            } else {
                min_margin = min_margin.min(s);
            }
        }
        (touching, min_margin)
    };

    for x in data.points() {
        for k in 0..d {
            for sign in [1.0, -1.0] {
                let mut p = vec![0.0; d + 1];
                p[k] = sign;
                p[d] = -sign * x[k];
                let (_, min_margin) = margins(&p);
                search.consider_jittered(&p, min_margin);
            }
        }
    }

    if n >= d {
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let rows: Vec<Vec<f64>> = idx
                .iter()
                .map(|&i| {
                    let mut r = data.point(i).to_vec();
                    r.push(1.0);
                    r
                })
                .collect();
            let normal = hyperplane_through(&rows);
            let wnorm = norm(&normal[..d]);
            if wnorm > 1e-12 {
                for orientation in [1.0, -1.0] {
                    let base: Vec<f64> = normal.iter().map(|v| orientation * v / wnorm).collect();
                    let (touching, min_margin) = margins(&base);
                    search.consider_jittered(&base, min_margin);
                    if touching.len() == d {
                        if let Some(tilted) = tilt(data, &search.costs, &rows, &touching, &base, min_margin) {
                            search.consider(tilted);
                        }
                    }
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }

    let (risk, params) = search.best.expect("constant candidates are always considered");
    let classifier = LinearClassifier::from_augmented(params)?;
    Ok((classifier, risk))
}

/// Rotates `base` slightly so each touching point lands on its cheaper side.
fn tilt(
    data: &Dataset,
    costs: &[[f64; 2]],
    rows: &[Vec<f64>],
    touching: &[usize],
    base: &[f64],
    min_margin: f64,
) -> Option<Vec<f64>> {
    let d = rows.len();
    let targets: Vec<f64> = touching
        .iter()
        .map(|&i| if costs[i][0] <= costs[i][1] { 1.0 } else { -1.0 })
        .collect();
    // minimum-norm δ with rows · δ = targets: δ = Mᵀ (M Mᵀ)⁻¹ t
    let mut gram = Matrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            gram[(a, b)] = rows[a].iter().zip(&rows[b]).map(|(u, v)| u * v).sum();
        }
    }
    // the touching set is the subset itself, but possibly in a different order
    let ordered: Vec<f64> = rows
        .iter()
        .map(|r| {
            let pos = touching
                .iter()
                .position(|&i| data.point(i) == &r[..d])
                .expect("subset points touch their own hyperplane");
            targets[pos]
        })
        .collect();
    let lambda = solve_linear_system(&gram, &ordered).ok()?;
    let delta: Vec<f64> = (0..=d).map(|k| (0..d).map(|a| rows[a][k] * lambda[a]).sum()).collect();
    let spread = data
        .points()
        .iter()
        .map(|x| augmented_score(&delta, x).abs())
        .fold(0.0f64, f64::max);
    if spread == 0.0 {
        return None;
    }
    let alpha = if min_margin.is_finite() {
        0.5 * min_margin / spread
    } else {
        1.0
    };
    Some(base.iter().zip(&delta).map(|(b, dl)| b + alpha * dl).collect())
}

/// Standardized copy of the features: `z = (x - mean) / std` per column.
struct Standardized {
    points: Vec<Vec<f64>>,
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl Standardized {
    fn new(data: &Dataset) -> Standardized {
        let d = data.dim();
        let n = data.len() as f64;
        let mut mean = vec![0.0; d];
        for x in data.points() {
            for k in 0..d {
                mean[k] += x[k] / n;
            }
        }
        let mut scale = vec![0.0; d];
        for x in data.points() {
            for k in 0..d {
                scale[k] += (x[k] - mean[k]).powi(2) / n;
            }
        }
        for s in &mut scale {
            *s = if *s > 0.0 { s.sqrt() } else { 1.0 };
        }
        let points = data
            .points()
            .iter()
            .map(|x| (0..d).map(|k| (x[k] - mean[k]) / scale[k]).collect())
            .collect();
        Standardized { points, mean, scale }
    }

    /// Maps standardized-space parameters back to the original features.
    fn to_original(&self, params: &[f64]) -> Result<LinearClassifier> {
        let d = self.mean.len();
        let w: Vec<f64> = (0..d).map(|k| params[k] / self.scale[k]).collect();
        let b = params[d] - (0..d).map(|k| w[k] * self.mean[k]).sum::<f64>();
        LinearClassifier::new(w, b)
    }
}

fn unit(mut v: Vec<f64>) -> Option<Vec<f64>> {
    let n = norm(&v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    v.iter_mut().for_each(|c| *c /= n);
    Some(v)
}

fn anneal(z: &Standardized, data: &Dataset, config: &SolverConfig, restart: usize) -> (f64, Vec<f64>) {
    let risk = |params: &[f64]| -> f64 {
        z.points
            .iter()
            .zip(data.labels())
            .zip(data.weights())
            .filter(|((x, &y), _)| Label::from_sign(augmented_score(params, x)) != y)
            .map(|(_, p)| p)
            .sum()
    };
    let dim = data.dim() + 1;
    let mut rng = stream_rng(config.seed, restart as u64);
    let mut current = loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if let Some(v) = unit(v) {
            break v;
        }
    };
    let mut current_risk = risk(&current);
    let mut best = (current_risk, current.clone());
    let mut temperature = config.initial_temperature;

    for _ in 0..config.max_iters {
        // step length shrinks with the temperature, down to a floor
        let step = (temperature / config.initial_temperature).sqrt().clamp(0.02, 1.0);
        let proposal: Vec<f64> = if rng.random::<bool>() {
            current
                .iter()
                .map(|c| c + step * rng.sample::<f64, _>(StandardNormal))
                .collect()
        } else {
            let k = rng.random_range(0..dim);
            let mut p = current.clone();
            p[k] += step * rng.sample::<f64, _>(StandardNormal);
            p
        };
        if let Some(proposal) = unit(proposal) {
            let r = risk(&proposal);
            let delta = r - current_risk;
            if delta <= 0.0 || rng.random::<f64>() < (-delta / temperature).exp() {
                current = proposal;
                current_risk = r;
                if current_risk < best.0 {
                    best = (current_risk, current.clone());
                }
            }
        }
        temperature *= config.decay;
    }
    best
}

/// Simulated annealing on the 0-1 risk of `data`'s labels.
///
/// Works in standardized feature coordinates on the unit sphere of `[w, b]`
/// (the prediction is scale invariant). Each restart starts from a random
/// direction, proposes Gaussian moves (all coordinates or a single one, with
/// a step that shrinks as the temperature cools) and accepts by the
/// Metropolis rule. Restart `r` reads stream `r` of `config.seed`, so the
/// result is deterministic; the best risk wins, earlier restarts on ties.
pub fn minimize_zero_one_stochastic(data: &Dataset, config: &SolverConfig) -> Result<LinearClassifier> {
    config.validate()?;
    let z = Standardized::new(data);
    let results: Vec<(f64, Vec<f64>)> = (0..config.restarts)
        .into_par_iter()
        .map(|r| anneal(&z, data, config, r))
        .collect();
    let (_, params) = results
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.0.total_cmp(&b.0).then(ia.cmp(ib)))
        .map(|(_, r)| r)
        .expect("at least one restart");
    z.to_original(&params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{example2_dataset, example3_dataset, iris_dataset};
    use crate::risk::{accuracy, empirical_risk, LossKind};

    #[test]
    fn combinations_are_enumerated() {
        let mut idx = vec![0, 1];
        let mut all = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            all.push(idx.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![2, 3]);
    }

    #[test]
    fn hyperplane_passes_through_points() {
        let rows = vec![vec![1.0, 2.0, 1.0], vec![3.0, -1.0, 1.0]];
        let n = hyperplane_through(&rows);
        for r in &rows {
            assert!(augmented_score(&n, &r[..2]).abs() < 1e-12);
        }
        let rows3 = vec![
            vec![1.0, 0.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0, 1.0],
        ];
        let n = hyperplane_through(&rows3);
        for r in &rows3 {
            assert!(augmented_score(&n, &r[..3]).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_example3() {
        let d = example3_dataset();
        let (f, risk) = minimize_zero_one_exact(&d, None).unwrap();
        assert_eq!(risk, 0.0);
        let threshold = -f.bias() / f.weights()[0];
        assert!(f.weights()[0] > 0.0 && threshold > 10.0 && threshold < 11.0, "{f}");
    }

    #[test]
    fn exact_example2_separates() {
        let d = example2_dataset();
        let (f, risk) = minimize_zero_one_exact(&d, None).unwrap();
        assert_eq!(risk, 0.0);
        assert_eq!(accuracy(&f, &d).unwrap(), 1.0);
    }

    #[test]
    fn exact_matches_brute_force_threshold_scan() {
        // 1-D: every threshold between sorted points, both orientations
        let xs = [0.3, 1.1, 1.7, 2.4, 3.0, 3.9, 4.2];
        let ys = [1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0];
        let d = Dataset::uniform(
            xs.iter().map(|x| vec![*x]).collect(),
            ys.iter().map(|y| Label::from_sign(*y)).collect(),
        )
        .unwrap();
        let mut cuts = vec![xs[0] - 1.0, xs[6] + 1.0];
        cuts.extend(xs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        let mut brute = f64::INFINITY;
        for c in cuts {
            for s in [1.0, -1.0] {
                let f = LinearClassifier::new(vec![s], -s * c).unwrap();
                brute = brute.min(empirical_risk(&f, &d, LossKind::ZeroOne).unwrap());
            }
        }
        let (f, risk) = minimize_zero_one_exact(&d, None).unwrap();
        assert!((risk - brute).abs() < 1e-12);
        assert!((empirical_risk(&f, &d, LossKind::ZeroOne).unwrap() - risk).abs() < 1e-12);
    }

    #[test]
    fn guard_is_enforced() {
        assert!(matches!(
            minimize_zero_one_exact(&iris_dataset(), None),
            Err(Error::GuardViolation(_))
        ));
    }

    #[test]
    fn stochastic_example3() {
        let d = example3_dataset();
        let config = SolverConfig {
            restarts: 4,
            max_iters: 2000,
            ..Default::default()
        };
        let f = minimize_zero_one_stochastic(&d, &config).unwrap();
        assert_eq!(empirical_risk(&f, &d, LossKind::ZeroOne).unwrap(), 0.0);
    }

    #[test]
    fn stochastic_is_seed_deterministic() {
        let d = example2_dataset();
        let config = SolverConfig {
            max_iters: 500,
            seed: 17,
            ..Default::default()
        };
        let a = minimize_zero_one_stochastic(&d, &config).unwrap();
        let b = minimize_zero_one_stochastic(&d, &config).unwrap();
        assert_eq!(a, b);
    }
}
