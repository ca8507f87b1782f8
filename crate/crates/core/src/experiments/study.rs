use rayon::prelude::*;

use crate::data::{iris_dataset, Dataset};
use crate::error::{Error, Result};
use crate::minimizers::SolverConfig;
use crate::noise::{flip_probabilities, inject_stream, NoiseSpec, QuadrantCenter};
use crate::risk::accuracy;
use crate::rng::derive_seed;

use super::{Algorithm, ExperimentReport, TrialRecord};

pub const IRIS_CONVENTION: &str = "Iris-setosa = +1, Iris-versicolor and Iris-virginica = -1";

/// No noise; uniform 10, 20, 30%; quadrant rates 15/20/25/30% and 30/25/20/15%.
pub fn default_noise_list() -> Vec<NoiseSpec> {
    let quadrant = |rates| NoiseSpec::Quadrant {
        rates,
        center: QuadrantCenter::Auto,
    };
    vec![
        NoiseSpec::none(),
        NoiseSpec::Uniform(0.1),
        NoiseSpec::Uniform(0.2),
        NoiseSpec::Uniform(0.3),
        quadrant([0.15, 0.20, 0.25, 0.30]),
        quadrant([0.30, 0.25, 0.20, 0.15]),
    ]
}

/// Stream of the label-corruption draw for one (noise setting, trial).
pub fn trial_stream(noise_index: usize, trial: usize) -> u64 {
    ((noise_index as u64) << 32) | trial as u64
}

/// Solver seed for one (noise setting, trial).
pub fn trial_seed(master_seed: u64, noise_index: usize, trial: usize) -> u64 {
    derive_seed(master_seed, &[noise_index as u64, trial as u64])
}

/// The Iris study: setosa against the other two species, all four features.
pub fn run_iris(
    trials: usize,
    master_seed: u64,
    noise_list: &[NoiseSpec],
    algorithms: &[Algorithm],
) -> Result<ExperimentReport> {
    run_dataset(
        &iris_dataset(),
        IRIS_CONVENTION,
        trials,
        master_seed,
        noise_list,
        algorithms,
        &SolverConfig::default(),
    )
}

/// For every noise setting and trial: corrupt the labels of `data`, train
/// every algorithm on the whole corrupted set and measure accuracy against
/// the original labels.
///
/// Trials run in parallel; results are gathered in (noise, trial,
/// algorithm) order, so the report depends only on the arguments. Solver
/// failures are recorded in the affected trial rather than aborting.
pub fn run_dataset(
    data: &Dataset,
    convention: &str,
    trials: usize,
    master_seed: u64,
    noise_list: &[NoiseSpec],
    algorithms: &[Algorithm],
    config: &SolverConfig,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if algorithms.is_empty() {
        return Err(Error::InvalidConfig("no algorithms selected".into()));
    }
    config.validate()?;
    let mut settings: Vec<(NoiseSpec, String)> = Vec::new();
    for spec in noise_list {
        flip_probabilities(data, spec)?;
        let label = spec.to_string();
        if !settings.iter().any(|(_, l)| *l == label) {
            settings.push((spec.clone(), label));
        }
    }
    if settings.is_empty() {
        return Err(Error::InvalidConfig("no noise settings selected".into()));
    }

    let jobs: Vec<(usize, usize)> = (0..settings.len())
        .flat_map(|n| (0..trials).map(move |t| (n, t)))
        .collect();
    let per_job: Vec<Vec<TrialRecord>> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let (spec, label) = &settings[n];
            let seed = trial_seed(master_seed, n, t);
            let noisy = inject_stream(data, spec, master_seed, trial_stream(n, t));
            algorithms
                .iter()
                .map(|&algorithm| {
                    let outcome = noisy.as_ref().map_err(Clone::clone).and_then(|noisy| {
                        let f = algorithm.train(&noisy.training_set(), &config.clone().with_seed(seed))?;
                        accuracy(&f, data)
                    });
                    let (accuracy, error) = match outcome {
                        Ok(a) => (Some(a), None),
                        Err(e) => (None, Some(e.to_string())),
                    };
                    TrialRecord {
                        algorithm,
                        noise: label.clone(),
                        trial: t,
                        seed,
                        accuracy,
                        error,
                    }
                })
                .collect()
        })
        .collect();

    Ok(ExperimentReport::from_records(
        master_seed,
        trials,
        settings.into_iter().map(|(_, l)| l).collect(),
        algorithms.to_vec(),
        convention.to_string(),
        per_job.into_iter().flatten().collect(),
    ))
}
