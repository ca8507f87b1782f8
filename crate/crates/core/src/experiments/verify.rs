use std::fmt::{Debug, Write as _};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::data::{example1_dataset, example2_dataset, example2_etas, example3_dataset, Dataset, Label};
use crate::error::Result;
use crate::minimizers::{
    fld_expected_direction, least_squares, minimize_hinge, minimize_smooth_convex, minimize_zero_one_exact,
    minimize_zero_one_stochastic, SolverConfig,
};
use crate::risk::{accuracy, empirical_risk, expected_noisy_risk, risk_difference, LinearClassifier, LossKind};
use crate::rng::{derive_seed, stream_rng};

/// One verified quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub section: String,
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub tolerance: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Distinct section names in order of first appearance.
    pub fn sections(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !out.contains(&c.section.as_str()) {
                out.push(&c.section);
            }
        }
        out
    }

    pub fn section_passed(&self, section: &str) -> bool {
        self.checks.iter().filter(|c| c.section == section).all(|c| c.passed)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    /// Checks grouped by section, one aligned line each, plus a summary.
    pub fn to_table(&self) -> String {
        let width = |f: fn(&Check) -> &str| self.checks.iter().map(|c| f(c).chars().count()).max().unwrap_or(0);
        let wn = width(|c| &c.name);
        let wc = width(|c| &c.computed).max("computed".len());
        let we = width(|c| &c.expected).max("expected".len());
        let wt = width(|c| &c.tolerance).max("tol".len());
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
        let mut out = String::new();
        for section in self.sections() {
            let verdict = if self.section_passed(section) { "PASS" } else { "FAIL" };
            writeln!(out, "== {section}: {verdict}").unwrap();
            writeln!(
                out,
                "  {}  {}  {}  {}  verdict",
                pad("check", wn),
                pad("computed", wc),
                pad("expected", we),
                pad("tol", wt)
            )
            .unwrap();
            for c in self.checks.iter().filter(|c| c.section == section) {
                writeln!(
                    out,
                    "  {}  {}  {}  {}  {}",
                    pad(&c.name, wn),
                    pad(&c.computed, wc),
                    pad(&c.expected, we),
                    pad(&c.tolerance, wt),
                    if c.passed { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
        }
        let failed = self.failures().count();
        writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
        .unwrap();
        out
    }
}

fn num(v: f64) -> String {
    if v == 0.0 || (1e-4..1e6).contains(&v.abs()) {
        let s = format!("{v:.8}");
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    } else {
        format!("{v:.4e}")
    }
}

fn tol(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-4 {
        format!("{v:e}")
    } else {
        num(v)
    }
}

fn nums(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| num(*x)).collect();
    format!("[{}]", parts.join(", "))
}

/// 1-based point names, e.g. `{x2, x5}`.
fn point_set(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| format!("x{}", i + 1)).collect();
    format!("{{{}}}", parts.join(", "))
}

struct Builder {
    section: String,
    report: CheckReport,
}

impl Builder {
    fn new(section: &str) -> Builder {
        Builder {
            section: section.into(),
            report: CheckReport::default(),
        }
    }

    fn push(&mut self, name: &str, computed: String, expected: String, tolerance: String, passed: bool) {
        self.report.checks.push(Check {
            section: self.section.clone(),
            name: name.into(),
            computed,
            expected,
            tolerance,
            passed,
        });
    }

    fn fail(&mut self, name: &str, expected: String, e: crate::error::Error) {
        self.push(name, format!("error: {e}"), expected, "-".into(), false);
    }

    fn close(&mut self, name: &str, computed: Result<f64>, expected: f64, tol: f64) {
        match computed {
            Ok(c) => self.push(name, num(c), num(expected), self::tol(tol), (c - expected).abs() <= tol),
            Err(e) => self.fail(name, num(expected), e),
        }
    }

    fn close_vec(&mut self, name: &str, computed: Result<Vec<f64>>, expected: &[f64], tol: f64) {
        match computed {
            Ok(c) => {
                let ok = c.len() == expected.len() && c.iter().zip(expected).all(|(a, b)| (a - b).abs() <= tol);
                self.push(name, nums(&c), nums(expected), self::tol(tol), ok)
            }
            Err(e) => self.fail(name, nums(expected), e),
        }
    }

    fn at_most(&mut self, name: &str, computed: Result<f64>, bound: f64, tol: f64) {
        match computed {
            Ok(c) => self.push(
                name,
                num(c),
                format!("<= {}", num(bound)),
                self::tol(tol),
                c <= bound + tol,
            ),
            Err(e) => self.fail(name, format!("<= {}", num(bound)), e),
        }
    }

    fn equal<T: PartialEq + Debug>(
        &mut self,
        name: &str,
        computed: Result<T>,
        expected: T,
        show: impl Fn(&T) -> String,
    ) {
        match computed {
            Ok(c) => {
                let ok = c == expected;
                self.push(name, show(&c), show(&expected), "exact".into(), ok)
            }
            Err(e) => self.fail(name, show(&expected), e),
        }
    }

    fn finish(self) -> CheckReport {
        self.report
    }
}

fn example1_checks() -> CheckReport {
    let mut b = Builder::new("Example 1 (0-1 loss, synthesized points)");
    let ex = match example1_dataset() {
        Ok(ex) => ex,
        Err(e) => {
            b.fail("construct dataset", "valid".into(), e);
            return b.finish();
        }
    };
    let d = &ex.dataset;
    b.equal(
        "errors of x2 + 5",
        Ok(ex.clean_minimizer_errors.clone()),
        vec![8, 9],
        |v| point_set(v),
    );
    b.equal(
        "errors of 15.5 x1 + 8 x2 + 10",
        Ok(ex.noisy_preferred_errors.clone()),
        vec![2, 4, 6, 9],
        |v| point_set(v),
    );
    b.close(
        "min clean 0-1 risk (exact search)",
        minimize_zero_one_exact(d, None).map(|(_, r)| r),
        2.0 / 16.0,
        1e-12,
    );
    b.close(
        "noisy risk difference R(x2 + 5) - R(15.5 x1 + 8 x2 + 10)",
        risk_difference(&ex.clean_minimizer, &ex.noisy_preferred, d, &ex.etas),
        0.15 / 16.0,
        1e-12,
    );
    b.finish()
}

fn example2_checks() -> CheckReport {
    let mut b = Builder::new("Example 2 (squared loss)");
    let d = example2_dataset();
    let weights = |etas: Option<&[f64]>| least_squares(&d, false, etas).map(|f| f.weights().to_vec());
    b.close_vec("clean least squares w", weights(None), &[0.0, 1.27], 5e-3);
    let e35 = example2_etas(0.35);
    let e40 = example2_etas(0.4);
    b.close_vec(
        "noisy least squares w, rate 0.35",
        weights(Some(&e35)),
        &[-0.342, 0.988],
        5e-3,
    );
    b.close_vec(
        "noisy least squares w, rate 0.4",
        weights(Some(&e40)),
        &[-0.390_638_86, 0.947_072_11],
        1e-6,
    );
    for (name, etas) in [
        ("accuracy of noisy fit, rate 0.35", &e35),
        ("accuracy of noisy fit, rate 0.4", &e40),
    ] {
        let acc = least_squares(&d, false, Some(etas)).and_then(|f| accuracy(&f, &d));
        b.close(name, acc, 8.0 / 9.0, 1e-12);
    }
    let exact = minimize_zero_one_exact(&d, Some(&e40));
    let floor: f64 = d.weights().iter().zip(&e40).map(|(p, e)| p * e).sum();
    b.close(
        "0-1 minimizer of noisy risk, rate 0.4: risk",
        exact.clone().map(|(_, r)| r),
        floor,
        1e-12,
    );
    b.close(
        "0-1 minimizer of noisy risk, rate 0.4: clean accuracy",
        exact.and_then(|(f, _)| accuracy(&f, &d)),
        1.0,
        0.0,
    );
    b.finish()
}

fn smooth_checks(section: &str, kind: LossKind, clean_b: f64, noisy_b: f64) -> CheckReport {
    let mut b = Builder::new(section);
    let d = example3_dataset();
    let config = SolverConfig::default();
    let etas = [0.3; 3];
    let solve = |etas: Option<&[f64]>| minimize_smooth_convex(&d, kind, etas, Some(&[1.0]), &config);
    b.close("clean bias (w = 1)", solve(None).map(|f| f.bias()), clean_b, 1e-3);
    b.close(
        "noisy bias (w = 1, rate 0.3)",
        solve(Some(&etas)).map(|f| f.bias()),
        noisy_b,
        1e-3,
    );
    b.equal(
        "noisy misclassified set",
        solve(Some(&etas)).and_then(|f| f.misclassified(&d)),
        vec![1],
        |v| point_set(v),
    );
    b.finish()
}

fn example5_checks() -> CheckReport {
    let mut b = Builder::new("Example 5 (hinge loss)");
    let d = example3_dataset();
    let config = SolverConfig::default();
    let etas = [0.3; 3];
    let clean = minimize_hinge(&d, None, &config);
    b.close(
        "clean LP objective",
        clean.as_ref().map(|s| s.objective).map_err(Clone::clone),
        0.0,
        1e-9,
    );
    b.close(
        "clean accuracy",
        clean
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|s| accuracy(&s.classifier, &d)),
        1.0,
        0.0,
    );
    let reference_clean = LinearClassifier::new(vec![54.7738], -571.221).expect("finite");
    let at_reference = empirical_risk(&reference_clean, &d, LossKind::Hinge).unwrap_or(f64::NAN);
    b.at_most(
        "clean objective vs reference (54.7738, -571.221)",
        clean.map(|s| s.objective),
        at_reference,
        1e-9,
    );

    let noisy = minimize_hinge(&d, Some(&etas), &config);
    b.close(
        "noisy LP objective",
        noisy.as_ref().map(|s| s.objective).map_err(Clone::clone),
        37.0 / 45.0,
        1e-9,
    );
    b.equal(
        "noisy misclassified set",
        noisy
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|s| s.classifier.misclassified(&d)),
        vec![1],
        |v| point_set(v),
    );
    for (name, w, bias) in [
        ("noisy objective vs reference (1/3, -8/3)", 1.0 / 3.0, -8.0 / 3.0),
        ("noisy objective vs reference (0.3333, -2.6667)", 0.3333, -2.6667),
    ] {
        let f = LinearClassifier::new(vec![w], bias).expect("finite");
        let bound = expected_noisy_risk(&f, &d, &etas, LossKind::Hinge).unwrap_or(f64::NAN);
        b.at_most(
            name,
            noisy.as_ref().map(|s| s.objective).map_err(Clone::clone),
            bound,
            1e-9,
        );
    }
    b.finish()
}

/// Golden checks on the five worked examples.
pub fn verify_examples() -> CheckReport {
    let mut report = example1_checks();
    report.extend(example2_checks());
    report.extend(smooth_checks(
        "Example 3 (exponential loss)",
        LossKind::Exponential,
        -10.5034,
        -8.3052,
    ));
    report.extend(smooth_checks("Example 4 (log loss)", LossKind::Log, -10.5086, -9.8607));
    report.extend(example5_checks());
    report
}

/// Gaussian features, random labels (both classes present) and random
/// positive weights.
pub fn random_dataset<R: Rng>(rng: &mut R, n: usize, d: usize) -> Dataset {
    assert!(n >= 2 && d >= 1);
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    let labels: Vec<Label> = (0..n)
        .map(|i| match i {
            0 => Label::Positive,
            1 => Label::Negative,
            _ => Label::from_sign(rng.random::<f64>() - 0.5),
        })
        .collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // absorb rounding so the weights sum to one
    let rest: f64 = weights[1..].iter().sum();
    weights[0] = 1.0 - rest;
    Dataset::new(points, labels, weights).expect("generated dataset is valid")
}

/// Uniform points in `[-1, 1]^d` labelled by a random hyperplane, with no
/// point closer than 0.02 to it; both classes present; uniform weights.
pub fn separable_dataset<R: Rng>(rng: &mut R, n: usize, d: usize) -> Dataset {
    loop {
        let w: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let wn = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if wn < 1e-3 {
            continue;
        }
        let b = 0.5 * rng.random_range(-1.0..1.0);
        let mut points = Vec::with_capacity(n);
        while points.len() < n {
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let s = w.iter().zip(&x).map(|(a, c)| a * c).sum::<f64>() + b;
            if (s / wn).abs() >= 0.02 {
                points.push(x);
            }
        }
        let labels: Vec<Label> = points
            .iter()
            .map(|x| Label::from_sign(w.iter().zip(x).map(|(a, c)| a * c).sum::<f64>() + b))
            .collect();
        if labels.contains(&Label::Positive) && labels.contains(&Label::Negative) {
            return Dataset::uniform(points, labels).expect("generated dataset is valid");
        }
    }
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Runs the annealing search and the exact oracle on `instances` seeded
/// 2-D problems with 50 points (a random hyperplane with 10% of labels
/// flipped) and counts how often the search is within `1/N` of the optimum.
/// Passes if at least 9 in 10 are.
pub fn oracle_equivalence(config: &SolverConfig, instances: usize) -> Check {
    const N: usize = 50;
    let mut hits = 0;
    let mut worst_gap: f64 = 0.0;
    let mut errors = Vec::new();
    for i in 0..instances {
        let mut rng = stream_rng(config.seed, 0x6000 + i as u64);
        let base = separable_dataset(&mut rng, N, 2);
        let labels = base
            .labels()
            .iter()
            .map(|&y| if rng.random::<f64>() < 0.1 { y.flipped() } else { y })
            .collect();
        let data = base.with_labels(labels).expect("same length");
        let outcome = minimize_zero_one_exact(&data, None).and_then(|(_, best)| {
            let search_config = config.clone().with_seed(derive_seed(config.seed, &[0x6000, i as u64]));
            let f = minimize_zero_one_stochastic(&data, &search_config)?;
            Ok(empirical_risk(&f, &data, LossKind::ZeroOne)? - best)
        });
        match outcome {
            Ok(gap) => {
                worst_gap = worst_gap.max(gap);
                if gap <= 1.0 / N as f64 + 1e-12 {
                    hits += 1;
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let needed = (9 * instances).div_ceil(10);
    let mut computed = format!("{hits}/{instances} (worst gap {})", num(worst_gap));
    if let Some(e) = errors.first() {
        write!(computed, "; error: {e}").unwrap();
    }
    Check {
        section: "0-1 search vs exact oracle".into(),
        name: format!("annealing within 1/{N} of exact risk"),
        computed,
        expected: format!(">= {needed}/{instances}"),
        tolerance: format!("1/{N}"),
        passed: instances > 0 && hits >= needed && errors.is_empty(),
    }
}

/// Randomized checks of the noise-tolerance properties on
/// `num_random_instances` seeded instances each (at least 20, and at least
/// 100 for the identity check), plus the annealing-vs-oracle comparison.
pub fn verify_theorems(config: &SolverConfig, num_random_instances: usize) -> CheckReport {
    let m = num_random_instances.max(20);
    let seed = config.seed;
    let mut report = CheckReport::default();

    // (a) R^η = η + (1 - 2η) R under uniform η, 0-1 loss
    let mut b = Builder::new("uniform noise, 0-1 loss: affine identity");
    let mut rng = stream_rng(seed, 0x1000);
    let mut worst: f64 = 0.0;
    let triples = num_random_instances.max(100);
    for _ in 0..triples {
        let d = rng.random_range(1..=3);
        let n = rng.random_range(5..=40);
        let data = random_dataset(&mut rng, n, d);
        let w: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let f = LinearClassifier::new(w, rng.sample(StandardNormal)).expect("finite");
        let eta = rng.random_range(0.0..0.5);
        let lhs = expected_noisy_risk(&f, &data, &vec![eta; n], LossKind::ZeroOne).unwrap_or(f64::NAN);
        let rhs = eta + (1.0 - 2.0 * eta) * empirical_risk(&f, &data, LossKind::ZeroOne).unwrap_or(f64::NAN);
        worst = worst.max((lhs - rhs).abs());
        if worst.is_nan() {
            break;
        }
    }
    b.push(
        &format!("max |noisy - (η + (1-2η) clean)| over {triples} triples"),
        num(worst),
        "0".into(),
        "1e-12".into(),
        worst <= 1e-12,
    );
    report.extend(b.finish());

    // (b) exact 0-1 minimizer under uniform η keeps the clean accuracy
    let mut b = Builder::new("uniform noise, 0-1 loss: minimizer accuracy");
    let mut rng = stream_rng(seed, 0x2000);
    let mut worst: f64 = 0.0;
    let mut failure = None;
    for _ in 0..m {
        let data = random_dataset(&mut rng, 20, 2);
        let eta = rng.random_range(0.05..0.45);
        let result = minimize_zero_one_exact(&data, None).and_then(|(clean, _)| {
            let (noisy, _) = minimize_zero_one_exact(&data, Some(&vec![eta; data.len()]))?;
            Ok((accuracy(&clean, &data)? - accuracy(&noisy, &data)?).abs())
        });
        match result {
            Ok(diff) => worst = worst.max(diff),
            Err(e) => failure = Some(e),
        }
    }
    match failure {
        Some(e) => b.fail("clean-accuracy gap", "0".into(), e),
        None => b.push(
            &format!("max clean-accuracy gap over {m} instances"),
            num(worst),
            "0".into(),
            "1e-12".into(),
            worst <= 1e-12,
        ),
    }
    report.extend(b.finish());

    // (c) separable data, non-uniform η < 0.5: exact minimizer stays perfect
    let mut b = Builder::new("separable data, non-uniform noise, 0-1 loss");
    let mut rng = stream_rng(seed, 0x3000);
    let mut perfect = 0;
    let mut failure = None;
    for _ in 0..m {
        let data = separable_dataset(&mut rng, 20, 2);
        let etas: Vec<f64> = (0..data.len()).map(|_| rng.random_range(0.0..0.49)).collect();
        match minimize_zero_one_exact(&data, Some(&etas)).and_then(|(f, _)| accuracy(&f, &data)) {
            Ok(1.0) => perfect += 1,
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    }
    match failure {
        Some(e) => b.fail("instances with clean accuracy 1", format!("{m}/{m}"), e),
        None => b.push(
            &format!("instances with clean accuracy 1 (of {m})"),
            format!("{perfect}/{m}"),
            format!("{m}/{m}"),
            "exact".into(),
            perfect == m,
        ),
    }
    let d2 = example2_dataset();
    b.close(
        "Example 2 data, its rate-0.4 pattern: clean accuracy",
        minimize_zero_one_exact(&d2, Some(&example2_etas(0.4))).and_then(|(f, _)| accuracy(&f, &d2)),
        1.0,
        0.0,
    );
    report.extend(b.finish());

    // (d) least squares scales by (1 - 2η) under uniform η
    let mut b = Builder::new("uniform noise, squared loss: (1-2η) scaling");
    for eta in [0.1, 0.25, 0.4] {
        let mut rng = stream_rng(seed, 0x4000 + (eta * 100.0) as u64);
        let mut worst: f64 = 0.0;
        let mut ratio_worst: f64 = 0.0;
        let mut flips = 0;
        let mut failure = None;
        for _ in 0..m {
            let d = rng.random_range(1..=4);
            let n = rng.random_range(10..=40);
            let data = random_dataset(&mut rng, n, d);
            let result = least_squares(&data, true, None).and_then(|clean| {
                let noisy = least_squares(&data, true, Some(&vec![eta; n]))?;
                Ok((clean, noisy))
            });
            match result {
                Ok((clean, noisy)) => {
                    let (c, nz) = (clean.augmented(), noisy.augmented());
                    for (a, b) in c.iter().zip(&nz) {
                        worst = worst.max((b - (1.0 - 2.0 * eta) * a).abs());
                        if a.abs() > 1e-6 {
                            ratio_worst = ratio_worst.max((b / a - (1.0 - 2.0 * eta)).abs());
                        }
                    }
                    flips += data
                        .points()
                        .iter()
                        .filter(|x| clean.predict(x) != noisy.predict(x))
                        .count();
                }
                Err(e) => failure = Some(e),
            }
        }
        let name = format!("η = {eta}: max |w_η - (1-2η) w| over {m} datasets");
        match failure {
            Some(e) => b.fail(&name, "0".into(), e),
            None => {
                b.push(&name, num(worst), "0".into(), "1e-10".into(), worst <= 1e-10);
                b.push(
                    &format!("η = {eta}: component ratio"),
                    num(1.0 - 2.0 * eta + ratio_worst),
                    num(1.0 - 2.0 * eta),
                    "1e-10".into(),
                    ratio_worst <= 1e-10,
                );
                b.push(
                    &format!("η = {eta}: points whose prediction changes"),
                    flips.to_string(),
                    "0".into(),
                    "exact".into(),
                    flips == 0,
                );
            }
        }
    }
    report.extend(b.finish());

    // (e) FLD direction under uniform and class-conditional mixtures
    let mut b = Builder::new("FLD direction under uniform and class-conditional noise");
    let mut rng = stream_rng(seed, 0x5000);
    let mut worst = [1.0f64; 2];
    let mut failure = None;
    for _ in 0..m {
        let d = rng.random_range(2..=4);
        let n = rng.random_range(10..=40);
        let data = random_dataset(&mut rng, n, d);
        let eta = rng.random_range(0.0..0.49);
        let (ep, en) = loop {
            let (p, q) = (rng.random_range(0.0..0.49), rng.random_range(0.0..0.49));
            if p + q < 0.95 {
                break (p, q);
            }
        };
        let result = fld_expected_direction(&data, 0.0, 0.0).and_then(|clean| {
            let uniform = fld_expected_direction(&data, eta, eta)?;
            let cccn = fld_expected_direction(&data, ep, en)?;
            Ok((cosine(&clean, &uniform), cosine(&clean, &cccn)))
        });
        match result {
            Ok((u, c)) => {
                worst[0] = worst[0].min(u);
                worst[1] = worst[1].min(c);
            }
            Err(e) => failure = Some(e),
        }
    }
    for (k, kind) in ["uniform", "class-conditional"].iter().enumerate() {
        let name = format!("{kind}: min cosine to clean direction over {m} datasets");
        match &failure {
            Some(e) => b.fail(&name, ">= 1 - 1e-10".into(), e.clone()),
            None => b.push(
                &name,
                format!("{:.12}", worst[k]),
                ">= 1 - 1e-10".into(),
                "1e-10".into(),
                worst[k] >= 1.0 - 1e-10,
            ),
        }
    }
    report.extend(b.finish());

    report.checks.push(oracle_equivalence(config, 10));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(num(0.009375), "0.009375");
        assert_eq!(num(-10.5034), "-10.5034");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(1e-13), "1.0000e-13");
        assert_eq!(point_set(&[1]), "{x2}");
    }

    #[test]
    fn examples_pass() {
        let report = verify_examples();
        assert!(report.all_passed(), "{}", report.to_table());
        assert_eq!(report.sections().len(), 5);
    }

    #[test]
    fn generators() {
        let mut rng = stream_rng(1, 0);
        let d = random_dataset(&mut rng, 10, 3);
        assert_eq!((d.len(), d.dim()), (10, 3));
        assert!((d.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let s = separable_dataset(&mut rng, 30, 2);
        assert!(s.count(Label::Positive) > 0 && s.count(Label::Negative) > 0);
        let (_, risk) = minimize_zero_one_exact(&s, None).unwrap();
        assert_eq!(risk, 0.0);
    }

    #[test]
    fn theorems_pass() {
        let report = verify_theorems(&SolverConfig::default(), 20);
        assert!(report.all_passed(), "{}", report.to_table());
    }

    #[test]
    fn failing_check_is_reported() {
        let mut b = Builder::new("s");
        b.close("x", Ok(1.0), 2.0, 0.1);
        let r = b.finish();
        assert!(!r.all_passed());
        assert!(r.to_table().contains("== s: FAIL"));
    }
}
