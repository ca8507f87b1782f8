use std::fmt::Write as _;

use super::{Algorithm, TrialRecord};

/// Aggregate of one (noise setting, algorithm) pair over the trials.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub noise: String,
    pub algorithm: Algorithm,
    /// Mean clean accuracy over the successful trials (NaN if none).
    pub mean: f64,
    /// Sample standard deviation (n - 1); 0 for a single trial.
    pub std: f64,
    /// Number of successful trials.
    pub trials: usize,
    pub failures: usize,
}

/// Accuracy table: rows are noise settings, columns are algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub master_seed: u64,
    pub trials: usize,
    pub noise_settings: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    /// Which raw class is `+1`, e.g. `Iris-setosa = +1`.
    pub convention: String,
    /// Row-major: noise setting, then algorithm.
    pub cells: Vec<Cell>,
    /// Ordered by noise setting, trial, algorithm.
    pub records: Vec<TrialRecord>,
}

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

impl ExperimentReport {
    pub fn from_records(
        master_seed: u64,
        trials: usize,
        noise_settings: Vec<String>,
        algorithms: Vec<Algorithm>,
        convention: String,
        records: Vec<TrialRecord>,
    ) -> ExperimentReport {
        let mut cells = Vec::with_capacity(noise_settings.len() * algorithms.len());
        for noise in &noise_settings {
            for &algorithm in &algorithms {
                let matching = records.iter().filter(|r| &r.noise == noise && r.algorithm == algorithm);
                let accs: Vec<f64> = matching.clone().filter_map(|r| r.accuracy).collect();
                let failures = matching.filter(|r| r.accuracy.is_none()).count();
                let (mean, std) = mean_std(&accs);
                cells.push(Cell {
                    noise: noise.clone(),
                    algorithm,
                    mean,
                    std,
                    trials: accs.len(),
                    failures,
                });
            }
        }
        ExperimentReport {
            master_seed,
            trials,
            noise_settings,
            algorithms,
            convention,
            cells,
            records,
        }
    }

    pub fn cell(&self, noise: &str, algorithm: Algorithm) -> Option<&Cell> {
        self.cells.iter().find(|c| c.noise == noise && c.algorithm == algorithm)
    }

    /// Largest difference between a stored cell statistic and its
    /// recomputation from the trial records.
    pub fn recompute_deviation(&self) -> f64 {
        let fresh = ExperimentReport::from_records(
            self.master_seed,
            self.trials,
            self.noise_settings.clone(),
            self.algorithms.clone(),
            self.convention.clone(),
            self.records.clone(),
        );
        let diff = |a: f64, b: f64| if a.is_nan() && b.is_nan() { 0.0 } else { (a - b).abs() };
        self.cells
            .iter()
            .zip(&fresh.cells)
            .map(|(a, b)| {
                if a.trials != b.trials || a.noise != b.noise || a.algorithm != b.algorithm {
                    f64::INFINITY
                } else {
                    diff(a.mean, b.mean).max(diff(a.std, b.std))
                }
            })
            .fold(0.0, f64::max)
    }

    /// One line per cell: `noise,algorithm,mean,std,trials`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("noise,algorithm,mean,std,trials\n");
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{:.6},{:.6},{}",
                csv_field(&c.noise),
                c.algorithm,
                c.mean,
                c.std,
                c.trials
            )
            .unwrap();
        }
        out
    }

    /// Per-trial dump: `noise,algorithm,trial,seed,accuracy,error`.
    pub fn records_csv(&self) -> String {
        let mut out = String::from("noise,algorithm,trial,seed,accuracy,error\n");
        for r in &self.records {
            let acc = r.accuracy.map(|a| format!("{a:.6}")).unwrap_or_default();
            let err = r.error.as_deref().map(csv_field).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                csv_field(&r.noise),
                r.algorithm,
                r.trial,
                r.seed,
                acc,
                err
            )
            .unwrap();
        }
        out
    }

    /// Aligned table of `mean ± std` accuracies in percent.
    pub fn to_table(&self) -> String {
        let mut header = vec!["noise".to_string()];
        header.extend(self.algorithms.iter().map(|a| a.title().to_string()));
        let mut rows = vec![header];
        for noise in &self.noise_settings {
            let mut row = vec![noise.clone()];
            for &a in &self.algorithms {
                let c = self.cell(noise, a).expect("cell for every pair");
                let mut text = if c.trials == 0 {
                    "failed".to_string()
                } else {
                    format!("{:.2} ± {:.2}", 100.0 * c.mean, 100.0 * c.std)
                };
                if c.failures > 0 && c.trials > 0 {
                    write!(text, " ({} failed)", c.failures).unwrap();
                }
                row.push(text);
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
            if i == 0 {
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                writeln!(out, "{}", rule.join("  ")).unwrap();
            }
        }
        writeln!(
            out,
            "\naccuracy on clean labels, mean ± std over {} trial(s), seed {}; {}",
            self.trials, self.master_seed, self.convention
        )
        .unwrap();
        let failures: Vec<&TrialRecord> = self.records.iter().filter(|r| r.error.is_some()).collect();
        for r in failures {
            writeln!(
                out,
                "failed: {} / {} / trial {}: {}",
                r.noise,
                r.algorithm,
                r.trial,
                r.error.as_deref().unwrap()
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(noise: &str, algorithm: Algorithm, trial: usize, accuracy: Option<f64>) -> TrialRecord {
        TrialRecord {
            algorithm,
            noise: noise.into(),
            trial,
            seed: trial as u64,
            accuracy,
            error: accuracy.is_none().then(|| "boom".to_string()),
        }
    }

    fn sample() -> ExperimentReport {
        let records = vec![
            record("none", Algorithm::Hinge, 0, Some(0.9)),
            record("none", Algorithm::Fld, 0, Some(1.0)),
            record("none", Algorithm::Hinge, 1, Some(0.8)),
            record("none", Algorithm::Fld, 1, None),
            record("quadrant:0.1,0.2,0.3,0.4", Algorithm::Hinge, 0, Some(0.5)),
            record("quadrant:0.1,0.2,0.3,0.4", Algorithm::Fld, 0, Some(0.6)),
            record("quadrant:0.1,0.2,0.3,0.4", Algorithm::Hinge, 1, Some(0.7)),
            record("quadrant:0.1,0.2,0.3,0.4", Algorithm::Fld, 1, Some(0.6)),
        ];
        ExperimentReport::from_records(
            3,
            2,
            vec!["none".into(), "quadrant:0.1,0.2,0.3,0.4".into()],
            vec![Algorithm::Hinge, Algorithm::Fld],
            "a = +1".into(),
            records,
        )
    }

    #[test]
    fn statistics() {
        assert_eq!(mean_std(&[1.0]), (1.0, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]);
        assert!((m - 2.0).abs() < 1e-15 && (s - 1.0).abs() < 1e-15);
        assert!(mean_std(&[]).0.is_nan());
    }

    #[test]
    fn cells_and_failures() {
        let r = sample();
        let c = r.cell("none", Algorithm::Hinge).unwrap();
        assert!((c.mean - 0.85).abs() < 1e-12 && (c.std - 0.0707106781).abs() < 1e-9);
        let f = r.cell("none", Algorithm::Fld).unwrap();
        assert_eq!((f.trials, f.failures, f.std), (1, 1, 0.0));
        assert_eq!(r.recompute_deviation(), 0.0);
    }

    #[test]
    fn csv_quotes_noise_labels() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "noise,algorithm,mean,std,trials");
        assert_eq!(lines.len(), 5);
        assert!(lines[3].starts_with("\"quadrant:0.1,0.2,0.3,0.4\",hinge,0.600000,"));
        assert!(sample().records_csv().contains("none,fld,1,1,,boom"));
    }

    #[test]
    fn table_mentions_convention_and_failures() {
        let t = sample().to_table();
        assert!(t.contains("hinge risk (LP)"));
        assert!(t.contains("85.00 ± 7.07"));
        assert!(t.contains("a = +1"));
        assert!(t.contains("failed: none / fld / trial 1: boom"));
    }
}
