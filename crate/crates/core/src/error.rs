//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected a square matrix, got {rows} rows and {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix entries must be finite")]
    NonFiniteEntries,
    #[error("matrix is not Hermitian: max |A - A\u{2020}| entry is {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    EigenSolverStalled { sweeps: usize },
    #[error("matrix function is undefined at eigenvalue {eigenvalue}")]
    UndefinedAtEigenvalue { eigenvalue: f64 },
    #[error("model parameters must be finite")]
    NonFiniteParams,
    #[error("chain length must be between 2 and {max}, got {sites}")]
    SitesOutOfRange { sites: usize, max: usize },
    #[error("operation requires exactly two spins, got {sites}")]
    TwoSpinsOnly { sites: usize },
    #[error("site index {site} out of range for a chain of {sites}")]
    SiteOutOfRange { site: usize, sites: usize },
    #[error("direction vector has near-zero norm")]
    ZeroDirection,
    #[error("temperature must be positive, got {temperature}")]
    NonPositiveTemperature { temperature: f64 },
    #[error("trace must be 1, got {trace}")]
    TraceNotOne { trace: f64 },
    #[error("matrix has a negative eigenvalue {eigenvalue} beyond the clamping tolerance")]
    NotPositiveSemidefinite { eigenvalue: f64 },
    #[error("oracle step must lie in (0, {max}], got {step}")]
    OracleStepOutOfRange { step: f64, max: f64 },
    #[error("grid resolution must be at least {min}, got {resolution}")]
    ResolutionTooSmall { resolution: usize, min: usize },
    #[error("at least one measurement is required")]
    NoMeasurements,
    #[error("total Fisher information must be nonnegative, got {fisher}")]
    NegativeFisher { fisher: f64 },
    #[error("zero Fisher information: the phase uncertainty is unbounded")]
    UnboundedUncertainty,
    #[error("sweep axes must use two distinct parameters")]
    DuplicateSweepAxes,
    #[error("sweep axis needs at least 2 points, got {count}")]
    AxisTooShort { count: usize },
    #[error("sweep axis range must satisfy min < max, got [{min}, {max}]")]
    BadAxisRange { min: f64, max: f64 },
    #[error("temperature axis must start above zero, got {min}")]
    NonPositiveTemperatureAxis { min: f64 },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown coupling sign {0:?} (expected \"ferro\" or \"antiferro\")")]
    UnknownSign(String),
    #[error("unknown sweep parameter {0:?} (expected one of T, B, b, D, J)")]
    UnknownSweepParam(String),
    #[error("sweep cell (axis1 = {axis1}, axis2 = {axis2}) failed: {source}")]
    SweepCellFailed {
        axis1: f64,
        axis2: f64,
        #[source]
        source: Box<Error>,
    },
}
