use labelnoise::data::{example1_dataset, iris_dataset};
use labelnoise::noise::{flip_probabilities, inject, inject_stream};
use labelnoise::risk::{empirical_risk, expected_noisy_risk};
use labelnoise::{LinearClassifier, LossKind, NoiseSpec};

#[test]
fn sampled_noisy_risk_matches_its_expectation() {
    let data = iris_dataset();
    let spec: NoiseSpec = "quadrant:0.1,0.2,0.3,0.4".parse().unwrap();
    let etas = flip_probabilities(&data, &spec).unwrap();
    // a deliberately imperfect classifier, so several loss values occur
    let f = LinearClassifier::new(vec![0.0, 1.0, -1.0, 0.0], 0.5).unwrap();
    for kind in [LossKind::ZeroOne, LossKind::Hinge, LossKind::Squared] {
        let expected = expected_noisy_risk(&f, &data, &etas, kind).unwrap();
        const M: usize = 2000;
        let samples: Vec<f64> = (0..M as u64)
            .map(|m| {
                let noisy = inject_stream(&data, &spec, 11, m).unwrap();
                empirical_risk(&f, &noisy.training_set(), kind).unwrap()
            })
            .collect();
        let mean = samples.iter().sum::<f64>() / M as f64;
        // per-point losses flip independently
        let var: f64 = data
            .iter()
            .zip(&etas)
            .map(|((x, y, p), e)| {
                let s = f.score(x);
                let gap = labelnoise::risk::loss(kind, s, y) - labelnoise::risk::loss(kind, s, y.flipped());
                p * p * gap * gap * e * (1.0 - e)
            })
            .sum();
        let sigma = (var / M as f64).sqrt();
        assert!(
            (mean - expected).abs() <= 5.0 * sigma + 1e-12,
            "{kind}: {mean} vs {expected} (σ {sigma})"
        );
    }
}

#[test]
fn each_point_flips_at_its_rate() {
    let ex = example1_dataset().unwrap();
    let spec = NoiseSpec::per_point(ex.etas.clone());
    const M: usize = 10_000;
    let mut counts = vec![0usize; ex.dataset.len()];
    for seed in 0..M as u64 {
        let noisy = inject(&ex.dataset, &spec, seed).unwrap();
        for (c, &f) in counts.iter_mut().zip(noisy.flipped()) {
            *c += f as usize;
        }
    }
    for (i, (&c, &eta)) in counts.iter().zip(&ex.etas).enumerate() {
        let sigma = (M as f64 * eta * (1.0 - eta)).sqrt();
        assert!(
            (c as f64 - M as f64 * eta).abs() <= 5.0 * sigma,
            "x{}: {c} flips, rate {eta}",
            i + 1
        );
    }
}

#[test]
fn zero_rates_never_flip() {
    let data = iris_dataset();
    let spec: NoiseSpec = "cccn:0,0.3".parse().unwrap();
    for seed in 0..200 {
        let noisy = inject(&data, &spec, seed).unwrap();
        for (i, &flipped) in noisy.flipped().iter().enumerate() {
            if data.label(i) == labelnoise::Label::Positive {
                assert!(!flipped);
            }
        }
    }
}

#[test]
fn injection_is_reproducible_and_streams_differ() {
    let data = iris_dataset();
    let spec = NoiseSpec::Uniform(0.3);
    let a = inject_stream(&data, &spec, 5, 1).unwrap();
    let b = inject_stream(&data, &spec, 5, 1).unwrap();
    let c = inject_stream(&data, &spec, 5, 2).unwrap();
    assert_eq!(a.noisy_labels(), b.noisy_labels());
    assert_ne!(a.flipped(), c.flipped());
    assert_eq!(a.base(), &data);
}
