use std::path::PathBuf;

use thiserror::Error;

use crate::characterize::ValidationVerdict;
use crate::network::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix is not symmetric (residual {residual:e} > threshold {threshold:e})")]
    NotSymmetric { residual: f64, threshold: f64 },

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal max {off_diagonal:e})"
    )]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("singular matrix: pivot {pivot} has magnitude {magnitude:e} below {threshold:e}")]
    Singular {
        pivot: usize,
        magnitude: f64,
        threshold: f64,
    },

    #[error("invalid network: {0}")]
    InvalidNetwork(ValidationReport),

    #[error("not a Laplace matrix: {0}")]
    NotLaplace(String),

    #[error("network is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("interior block is singular; the network interior is degenerate (pivot {pivot})")]
    DegenerateInterior { pivot: usize },

    #[error("matrix is not an admissible response matrix: {0}")]
    Inadmissible(Box<ValidationVerdict>),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("synthesized network does not reproduce the response matrix (relative residual {residual:e} > {threshold:e})")]
    VerificationFailed { residual: f64, threshold: f64 },

    #[error("random generator failed: {0}")]
    Generator(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        reason: String,
    },
}
