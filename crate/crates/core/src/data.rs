//! Datasets, CSV ingestion and the fixed datasets used by the worked examples.
//!
//! A [`Dataset`] is an empirical measure: every point carries a probability
//! mass, and all risks in the crate are expectations under these masses.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::risk::LinearClassifier;

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    pub fn from_sign(value: f64) -> Label {
        if value >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    /// `+1.0` or `-1.0`.
    pub fn value(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Positive => f.write_str("+1"),
            Label::Negative => f.write_str("-1"),
        }
    }
}

/// Feature vectors with binary labels and a probability mass per point.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Vec<Vec<f64>>,
    labels: Vec<Label>,
    weights: Vec<f64>,
    dim: usize,
}

impl Dataset {
    pub fn new(points: Vec<Vec<f64>>, labels: Vec<Label>, weights: Vec<f64>) -> Result<Dataset> {
        if points.is_empty() {
            return Err(Error::InvalidDataset("dataset has no points".into()));
        }
        if labels.len() != points.len() || weights.len() != points.len() {
            return Err(Error::InvalidDataset(format!(
                "{} points, {} labels, {} weights",
                points.len(),
                labels.len(),
                weights.len()
            )));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidDataset("points have dimension 0".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "point {i} has dimension {}, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDataset(format!("point {i} has a non-finite coordinate")));
            }
        }
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0 && *w <= 1.0)) {
            return Err(Error::InvalidDataset(format!(
                "weight {i} = {} is not in (0, 1]",
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDataset(format!("weights sum to {total}, not 1")));
        }
        Ok(Dataset {
            points,
            labels,
            weights,
            dim,
        })
    }

    /// Dataset with uniform masses `1/N`.
    pub fn uniform(points: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Dataset> {
        let n = points.len();
        Dataset::new(points, labels, vec![1.0 / n as f64; n])
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; datasets hold at least one point.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    /// Iterator over `(point, label, weight)`.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], Label, f64)> + '_ {
        self.points
            .iter()
            .zip(&self.labels)
            .zip(&self.weights)
            .map(|((p, &l), &w)| (p.as_slice(), l, w))
    }

    /// Same points and masses with a different labelling.
    pub fn with_labels(&self, labels: Vec<Label>) -> Result<Dataset> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: labels.len(),
            });
        }
        Ok(Dataset { labels, ..self.clone() })
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

/// Maps raw label strings onto the two classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMapping {
    positive: String,
    negatives: BTreeSet<String>,
}

impl LabelMapping {
    pub fn new<I, S>(positive: impl Into<String>, negatives: I) -> Result<LabelMapping>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let positive = positive.into();
        let negatives: BTreeSet<String> = negatives.into_iter().map(Into::into).collect();
        if negatives.contains(&positive) {
            return Err(Error::InvalidMapping(format!(
                "'{positive}' is both the positive and a negative label"
            )));
        }
        if negatives.is_empty() {
            return Err(Error::InvalidMapping("no negative labels given".into()));
        }
        Ok(LabelMapping { positive, negatives })
    }

    /// Builds a binary mapping from the labels observed in a column: the
    /// positive value against the single other value. A third distinct value
    /// is an error naming it.
    pub fn infer_binary<'a, I>(positive: &str, observed: I) -> Result<LabelMapping>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut others = BTreeSet::new();
        let mut seen_positive = false;
        for value in observed {
            if value == positive {
                seen_positive = true;
            } else if others.insert(value.to_string()) && others.len() > 1 {
                let listed: Vec<&str> = others.iter().map(String::as_str).collect();
                return Err(Error::InvalidMapping(format!(
                    "label column is not binary: besides '{positive}' it contains {} \
                     (offending value '{value}')",
                    listed.join(", ")
                )));
            }
        }
        if !seen_positive {
            return Err(Error::InvalidMapping(format!(
                "positive label '{positive}' does not occur in the label column"
            )));
        }
        LabelMapping::new(positive, others)
    }

    pub fn positive(&self) -> &str {
        &self.positive
    }

    pub fn negatives(&self) -> impl Iterator<Item = &str> {
        self.negatives.iter().map(String::as_str)
    }

    pub fn map(&self, raw: &str) -> Option<Label> {
        if raw == self.positive {
            Some(Label::Positive)
        } else if self.negatives.contains(raw) {
            Some(Label::Negative)
        } else {
            None
        }
    }
}

/// A header plus rows of raw cells.
///
/// Comma separated, first line is the header, no quoting. Blank lines are
/// ignored. Row numbers in errors are 1-based file line numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<(usize, Vec<String>)>,
}

impl CsvTable {
    pub fn parse(text: &str) -> Result<CsvTable> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header_line) = lines
            .next()
            .ok_or_else(|| Error::CsvFormat("file is empty (no header row)".into()))?;
        let header: Vec<String> = header_line.split(',').map(|c| c.trim().to_string()).collect();
        let mut rows = Vec::new();
        for (line_no, line) in lines {
            let cells: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
            if cells.len() != header.len() {
                return Err(Error::CsvFormat(format!(
                    "row {line_no} has {} cells, header has {}",
                    cells.len(),
                    header.len()
                )));
            }
            rows.push((line_no, cells));
        }
        Ok(CsvTable { header, rows })
    }

    pub fn read(path: &Path) -> Result<CsvTable> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        CsvTable::parse(&text)
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::CsvFormat(format!("no column named '{name}' in header")))
    }

    /// Raw values of one column, in row order.
    pub fn column(&self, name: &str) -> Result<Vec<&str>> {
        let idx = self.column_index(name)?;
        Ok(self.rows.iter().map(|(_, r)| r[idx].as_str()).collect())
    }

    /// Converts to a dataset with uniform masses. Features are all non-label
    /// columns in file order.
    pub fn to_dataset(&self, label_column: &str, mapping: &LabelMapping) -> Result<Dataset> {
        let label_idx = self.column_index(label_column)?;
        if self.rows.is_empty() {
            return Err(Error::InvalidDataset("CSV has a header but no data rows".into()));
        }
        if self.header.len() < 2 {
            return Err(Error::InvalidDataset("CSV has no feature columns".into()));
        }
        let mut points = Vec::with_capacity(self.rows.len());
        let mut labels = Vec::with_capacity(self.rows.len());
        for (line_no, cells) in &self.rows {
            let mut point = Vec::with_capacity(cells.len() - 1);
            for (j, cell) in cells.iter().enumerate() {
                if j == label_idx {
                    continue;
                }
                let v: f64 = cell
                    .parse()
                    .ok()
                    .filter(|v: &f64| v.is_finite())
                    .ok_or_else(|| Error::CsvCell {
                        row: *line_no,
                        column: self.header[j].clone(),
                        value: cell.clone(),
                    })?;
                point.push(v);
            }
            let label = mapping.map(&cells[label_idx]).ok_or_else(|| Error::UnknownLabel {
                row: *line_no,
                value: cells[label_idx].clone(),
            })?;
            points.push(point);
            labels.push(label);
        }
        Dataset::uniform(points, labels)
    }
}

/// Reads a CSV file into a dataset with uniform masses.
pub fn load_csv(path: &Path, label_column: &str, mapping: &LabelMapping) -> Result<Dataset> {
    CsvTable::read(path)?.to_dataset(label_column, mapping)
}

/// Parses CSV text; see [`load_csv`].
pub fn parse_csv(text: &str, label_column: &str, mapping: &LabelMapping) -> Result<Dataset> {
    CsvTable::parse(text)?.to_dataset(label_column, mapping)
}

/// The bundled Iris data (UCI version, 150 rows, label column `class`).
pub const IRIS_CSV: &str = include_str!("../data/iris.csv");

pub const IRIS_LABEL_COLUMN: &str = "class";

/// Iris-setosa against the merged versicolor and virginica classes.
pub fn iris_mapping() -> LabelMapping {
    LabelMapping::new("Iris-setosa", ["Iris-versicolor", "Iris-virginica"]).expect("static mapping is valid")
}

/// The two-class Iris task: setosa is `+1`, everything else `-1`.
pub fn iris_dataset() -> Dataset {
    parse_csv(IRIS_CSV, IRIS_LABEL_COLUMN, &iris_mapping()).expect("bundled Iris CSV is valid")
}

/// 36 points equally spaced on the unit circle at angles `(2i-1)π/36`;
/// the upper half (`i = 1..=18`) is positive.
pub fn example2_dataset() -> Dataset {
    let (points, labels) = (1..=36)
        .map(|i| {
            let theta = (2 * i - 1) as f64 * PI / 36.0;
            let label = if i <= 18 { Label::Positive } else { Label::Negative };
            (vec![theta.cos(), theta.sin()], label)
        })
        .unzip();
    Dataset::uniform(points, labels).expect("static dataset is valid")
}

/// Flip rates for [`example2_dataset`]: `rate` on x2..x7 and x20..x25
/// (1-based), zero elsewhere.
pub fn example2_etas(rate: f64) -> Vec<f64> {
    (1..=36)
        .map(|i| {
            if (2..=7).contains(&i) || (20..=25).contains(&i) {
                rate
            } else {
                0.0
            }
        })
        .collect()
}

/// Points 5, 10, 11 on the line with labels -1, -1, +1.
pub fn example3_dataset() -> Dataset {
    Dataset::uniform(
        vec![vec![5.0], vec![10.0], vec![11.0]],
        vec![Label::Negative, Label::Negative, Label::Positive],
    )
    .expect("static dataset is valid")
}

/// The quadratic-boundary counter-example together with the two linear
/// classifiers it compares and its noise rates.
///
/// The coordinates are synthesized: they satisfy the required labelling
/// `sign(x1² + x2)` and the required misclassification sets, and no linear
/// classifier makes fewer than two errors on them. Indices in this struct
/// are 0-based.
#[derive(Debug, Clone)]
pub struct Example1 {
    pub dataset: Dataset,
    /// `x2 + 5`, the clean 0-1 risk minimizer over linear classifiers.
    pub clean_minimizer: LinearClassifier,
    /// `15.5 x1 + 8 x2 + 10`.
    pub noisy_preferred: LinearClassifier,
    /// Points misclassified by `clean_minimizer`.
    pub clean_minimizer_errors: Vec<usize>,
    /// Points misclassified by `noisy_preferred`.
    pub noisy_preferred_errors: Vec<usize>,
    /// Flip probabilities: 0.125 on x9, 0.4 on x3, x5, x7, 0.2 elsewhere.
    pub etas: Vec<f64>,
    pub synthesized: bool,
}

const EXAMPLE1_POINTS: [[f64; 2]; 16] = [
    [1.0, 1.0],
    [2.0, -1.0],
    [-2.0, -1.0],
    [0.5, 2.0],
    [-2.5, 0.0],
    [3.0, -4.0],
    [-2.2, -4.5],
    [0.0, -7.0],
    [0.0, -3.0],
    [-3.0, -6.0],
    [1.0, -8.0],
    [-1.0, -6.0],
    [2.0, -9.0],
    [-0.5, -5.5],
    [-4.0, -20.0],
    [-1.0, -5.2],
];

pub fn example1_dataset() -> Result<Example1> {
    let points: Vec<Vec<f64>> = EXAMPLE1_POINTS.iter().map(|p| p.to_vec()).collect();
    let labels: Vec<Label> = points.iter().map(|p| Label::from_sign(p[0] * p[0] + p[1])).collect();
    let dataset = Dataset::uniform(points, labels)?;
    let clean_minimizer = LinearClassifier::new(vec![0.0, 1.0], 5.0)?;
    let noisy_preferred = LinearClassifier::new(vec![15.5, 8.0], 10.0)?;

    let clean_minimizer_errors = clean_minimizer.misclassified(&dataset)?;
    let noisy_preferred_errors = noisy_preferred.misclassified(&dataset)?;
    if clean_minimizer_errors != [8, 9] {
        return Err(Error::Construction(format!(
            "x2 + 5 misclassifies {clean_minimizer_errors:?}, expected x9, x10"
        )));
    }
    if noisy_preferred_errors != [2, 4, 6, 9] {
        return Err(Error::Construction(format!(
            "15.5 x1 + 8 x2 + 10 misclassifies {noisy_preferred_errors:?}, expected x3, x5, x7, x10"
        )));
    }

    let mut etas = vec![0.2; 16];
    etas[8] = 0.125;
    for i in [2, 4, 6] {
        etas[i] = 0.4;
    }
    Ok(Example1 {
        dataset,
        clean_minimizer,
        noisy_preferred,
        clean_minimizer_errors,
        noisy_preferred_errors,
        etas,
        synthesized: true,
    })
}
