use labelnoise::data::{iris_dataset, iris_mapping, parse_csv, IRIS_CSV, IRIS_LABEL_COLUMN};
use labelnoise::experiments::{default_noise_list, run_dataset, run_iris, IRIS_CONVENTION};
use labelnoise::minimizers::{fld, minimize_zero_one_stochastic};
use labelnoise::risk::accuracy;
use labelnoise::{Algorithm, Label, SolverConfig};

#[test]
fn iris_binary_task_shape() {
    let d = iris_dataset();
    assert_eq!((d.len(), d.dim()), (150, 4));
    assert_eq!(d.count(Label::Positive), 50);
    assert_eq!(d.count(Label::Negative), 100);
}

#[test]
fn default_report_has_six_rows_and_five_columns() {
    let r = run_iris(2, 42, &default_noise_list(), &Algorithm::ALL).unwrap();
    assert_eq!(r.noise_settings.len(), 6);
    assert_eq!(r.algorithms.len(), 5);
    assert_eq!(r.cells.len(), 30);
    assert_eq!(r.records.len(), 60);
    assert!(r.records.iter().all(|t| t.error.is_none()));
    assert!(r.recompute_deviation() <= 1e-12);
    assert_eq!(r.to_csv().lines().count(), 31);
    assert!(r.to_table().contains(IRIS_CONVENTION));
}

#[test]
fn full_run_is_deterministic() {
    let noise = default_noise_list();
    let a = run_iris(2, 7, &noise, &Algorithm::ALL).unwrap();
    let b = run_iris(2, 7, &noise, &Algorithm::ALL).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.records_csv(), b.records_csv());
    let c = run_iris(2, 8, &noise, &Algorithm::ALL).unwrap();
    assert_ne!(a.records_csv(), c.records_csv());
}

#[test]
fn csv_pipeline_matches_bundled_pipeline() {
    let loaded = parse_csv(IRIS_CSV, IRIS_LABEL_COLUMN, &iris_mapping()).unwrap();
    let noise = &default_noise_list()[1..3];
    let algs = [Algorithm::LeastSquares, Algorithm::ZeroOne];
    let via_csv = run_dataset(&loaded, IRIS_CONVENTION, 2, 3, noise, &algs, &SolverConfig::default()).unwrap();
    assert_eq!(via_csv, run_iris(2, 3, noise, &algs).unwrap());
}

#[test]
fn clean_iris_accuracies() {
    let d = iris_dataset();
    assert!(accuracy(&fld(&d).unwrap(), &d).unwrap() >= 0.92);
    let f = minimize_zero_one_stochastic(&d, &SolverConfig::default()).unwrap();
    assert!(accuracy(&f, &d).unwrap() >= 0.96);
}
