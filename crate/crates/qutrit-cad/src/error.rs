//! Error type shared across the library.

use thiserror::Error;

/// Everything that can go wrong in the library, from bad parameters to
/// numerical failure inside the eigensolver.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix handed to the Hermitian eigensolver was not Hermitian.
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {max_dev:.3e} exceeds {tol:.0e}")]
    NotHermitian { max_dev: f64, tol: f64 },

    /// The Jacobi sweep cap was reached before the off-diagonal norm target.
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// Two operands had incompatible dimensions.
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// A numeric parameter left its documented range.
    #[error("parameter `{name}` = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// State amplitudes whose squared moduli do not sum to one.
    #[error("amplitudes are not normalized: alpha^2 + |beta|^2 + |gamma|^2 = {norm} (|1 - norm| > {tol:.0e})")]
    NotNormalized { norm: f64, tol: f64 },

    /// A Kraus set that does not resolve the identity.
    #[error("Kraus set violates completeness: max |(sum K^+ K - I)_ij| = {defect:.3e}")]
    IncompleteKraus { defect: f64 },

    /// Post-selection on an outcome whose probability is numerically zero.
    #[error("post-selection probability {probability:.3e} is below {threshold:.0e}; conditional state is undefined")]
    ZeroProbability { probability: f64, threshold: f64 },

    /// Sweep records do not cover a full rectangle in the chosen heatmap axes.
    #[error("heatmap input is not a complete rectangular grid: no unique value at ({x_axis}, {y_axis}) = ({x}, {y})")]
    IncompleteGrid {
        x_axis: String,
        y_axis: String,
        x: f64,
        y: f64,
    },

    /// The sweep configuration file could not be parsed.
    #[error("config parse error at `{path}`: {message}")]
    ConfigParse { path: String, message: String },

    /// The sweep configuration parsed but one or more fields are invalid.
    /// All violations are collected before reporting.
    #[error("invalid config:\n{}", .violations.join("\n"))]
    ConfigInvalid { violations: Vec<String> },

    /// Every grid point of a sweep was post-selected away.
    #[error("sweep produced no usable rows: all {rows} grid points had zero success probability")]
    EmptySweep { rows: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
