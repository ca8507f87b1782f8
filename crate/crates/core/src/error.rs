use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("malformed CSV: {0}")]
    CsvFormat(String),

    #[error("row {row}, column '{column}': cannot parse '{value}' as a finite real")]
    CsvCell { row: usize, column: String, value: String },

    #[error("row {row}: label '{value}' is not covered by the label mapping")]
    UnknownLabel { row: usize, value: String },

    #[error("invalid label mapping: {0}")]
    InvalidMapping(String),

    #[error("invalid noise setting: {0}")]
    InvalidNoise(String),

    #[error("matrix is singular to working precision (pivot {pivot:e} at column {column})")]
    Singular { column: usize, pivot: f64 },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("objective is unbounded below along {0}; no finite minimizer exists")]
    NoFiniteMinimizer(String),

    #[error("solver did not converge within {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("{0}")]
    GuardViolation(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("construction check failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
