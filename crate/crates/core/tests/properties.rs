use labelnoise::data::{Dataset, Label};
use labelnoise::minimizers::{
    canonical_direction, fld_expected_direction, least_squares, minimize_hinge, minimize_zero_one_exact,
};
use labelnoise::risk::{empirical_risk, expected_noisy_risk, zero_one_noisy_decomposition};
use labelnoise::{LinearClassifier, LossKind, SolverConfig};
use proptest::prelude::*;

/// Points, labels (both classes present) and weights normalized to one.
fn dataset(max_n: usize, d: usize) -> impl Strategy<Value = Dataset> {
    (2..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(prop::collection::vec(-5.0..5.0f64, d), n),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(0.1..1.0f64, n),
        )
            .prop_map(|(points, signs, raw)| {
                let mut labels: Vec<Label> = signs
                    .iter()
                    .map(|&s| if s { Label::Positive } else { Label::Negative })
                    .collect();
                labels[0] = Label::Positive;
                labels[1] = Label::Negative;
                let total: f64 = raw.iter().sum();
                let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
                let rest: f64 = weights[1..].iter().sum();
                weights[0] = 1.0 - rest;
                Dataset::new(points, labels, weights).unwrap()
            })
    })
}

fn classifier(d: usize) -> impl Strategy<Value = LinearClassifier> {
    (prop::collection::vec(-3.0..3.0f64, d), -3.0..3.0f64).prop_map(|(w, b)| LinearClassifier::new(w, b).unwrap())
}

fn with_etas(max_n: usize, d: usize) -> impl Strategy<Value = (Dataset, Vec<f64>)> {
    dataset(max_n, d).prop_flat_map(|data| {
        let n = data.len();
        (Just(data), prop::collection::vec(0.0..0.499f64, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn zero_one_decomposition_sums_to_noisy_risk((data, etas) in with_etas(30, 3), f in classifier(3)) {
        let (base, excess) = zero_one_noisy_decomposition(&f, &data, &etas).unwrap();
        let total = expected_noisy_risk(&f, &data, &etas, LossKind::ZeroOne).unwrap();
        prop_assert!((base + excess - total).abs() <= 1e-12);
        let floor: f64 = data.weights().iter().zip(&etas).map(|(p, e)| p * e).sum();
        prop_assert!((base - floor).abs() <= 1e-12);
        prop_assert!(excess >= -1e-15);
    }

    #[test]
    fn uniform_noise_is_affine_in_clean_risk(data in dataset(30, 2), f in classifier(2), eta in 0.0..0.5f64) {
        let noisy = expected_noisy_risk(&f, &data, &vec![eta; data.len()], LossKind::ZeroOne).unwrap();
        let clean = empirical_risk(&f, &data, LossKind::ZeroOne).unwrap();
        prop_assert!((noisy - (eta + (1.0 - 2.0 * eta) * clean)).abs() <= 1e-12);
    }

    #[test]
    fn uniform_noise_preserves_risk_order(data in dataset(30, 2), f in classifier(2), g in classifier(2), eta in 0.0..0.49f64) {
        let etas = vec![eta; data.len()];
        let clean = |h: &LinearClassifier| empirical_risk(h, &data, LossKind::ZeroOne).unwrap();
        let noisy = |h: &LinearClassifier| expected_noisy_risk(h, &data, &etas, LossKind::ZeroOne).unwrap();
        let dc = clean(&f) - clean(&g);
        let dn = noisy(&f) - noisy(&g);
        if dc.abs() > 1e-9 {
            prop_assert_eq!(dc > 0.0, dn > 0.0);
        }
    }

    #[test]
    fn convex_losses_give_convex_noisy_risk((data, etas) in with_etas(20, 2), f in classifier(2), g in classifier(2)) {
        let mid_params: Vec<f64> = f.augmented().iter().zip(g.augmented()).map(|(a, b)| 0.5 * (a + b)).collect();
        let mid = LinearClassifier::from_augmented(mid_params).unwrap();
        for kind in [LossKind::Squared, LossKind::Exponential, LossKind::Log, LossKind::Hinge] {
            let r = |h: &LinearClassifier| expected_noisy_risk(h, &data, &etas, kind).unwrap();
            let avg = 0.5 * (r(&f) + r(&g));
            prop_assert!(r(&mid) <= avg + 1e-9 * (1.0 + avg.abs()), "{kind}");
        }
    }

    #[test]
    fn least_squares_scales_under_uniform_noise(data in dataset(25, 3), eta in 0.0..0.49f64) {
        prop_assume!(data.len() >= 6);
        if let Ok(clean) = least_squares(&data, true, None) {
            let noisy = least_squares(&data, true, Some(&vec![eta; data.len()])).unwrap();
            let scale = 1.0 - 2.0 * eta;
            for (a, b) in clean.augmented().iter().zip(noisy.augmented()) {
                prop_assert!((b - scale * a).abs() <= 1e-9 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn fld_direction_survives_class_conditional_noise(data in dataset(25, 3), ep in 0.0..0.45f64, en in 0.0..0.45f64) {
        prop_assume!(data.len() >= 6);
        if let Ok(clean) = fld_expected_direction(&data, 0.0, 0.0) {
            let noisy = fld_expected_direction(&data, ep, en).unwrap();
            let cos: f64 = clean.iter().zip(&noisy).map(|(a, b)| a * b).sum();
            prop_assert!(cos >= 1.0 - 1e-9, "cos = {cos}");
            for (a, b) in canonical_direction(&noisy).iter().zip(&noisy) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn hinge_lp_is_below_any_classifier((data, etas) in with_etas(15, 2), f in classifier(2)) {
        let s = minimize_hinge(&data, Some(&etas), &SolverConfig::default()).unwrap();
        let at_f = expected_noisy_risk(&f, &data, &etas, LossKind::Hinge).unwrap();
        prop_assert!(s.objective <= at_f + 1e-9);
        let at_solution = expected_noisy_risk(&s.classifier, &data, &etas, LossKind::Hinge).unwrap();
        prop_assert!((at_solution - s.objective).abs() <= 1e-7 * (1.0 + s.objective));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_zero_one_is_below_random_probes((data, etas) in with_etas(12, 2), probes in prop::collection::vec(classifier(2), 20)) {
        let (best, risk) = minimize_zero_one_exact(&data, Some(&etas)).unwrap();
        let at_best = expected_noisy_risk(&best, &data, &etas, LossKind::ZeroOne).unwrap();
        prop_assert!((at_best - risk).abs() <= 1e-12);
        for f in &probes {
            prop_assert!(risk <= expected_noisy_risk(f, &data, &etas, LossKind::ZeroOne).unwrap() + 1e-12);
        }
    }
}
