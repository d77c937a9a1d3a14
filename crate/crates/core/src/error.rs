//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("basis mismatch: expected {expected} states, found {found}")]
    BasisMismatch { expected: usize, found: usize },

    #[error("bases share labels; tensor operands must be over disjoint label sets")]
    OverlappingLabels,

    #[error("basis labels are not distinct: {label:?} repeats")]
    DuplicateLabel { label: String },

    #[error("state is not normalized: |amplitudes|^2 sums to {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("matrix is not Hermitian: max deviation {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix has eigenvalue {value:e} below the PSD floor")]
    NegativeEigenvalue { value: f64 },

    #[error("splitter amplitudes violate |r|^2 + |t|^2 = 1 (got {norm_sq})")]
    InvalidSplitter { norm_sq: f64 },

    #[error("dimension must be at least 2 (got {dim})")]
    DimensionTooSmall { dim: usize },

    #[error("component references unknown spatial mode {mode:?}")]
    UnknownMode { mode: String },

    #[error("stage {stage}: mode {mode:?} is wired to more than one component")]
    PortCollision { stage: usize, mode: String },

    #[error("netlist basis must carry polarization labels H (and optionally V)")]
    UnsupportedBasis,

    #[error("probability {value} outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },

    #[error("modes {a:?} and {b:?} carry no amplitude; pair phase is undefined")]
    ZeroPairWeight { a: String, b: String },

    #[error("phase chain does not reach mode {mode:?}; add an interference link")]
    DisconnectedPhaseChain { mode: String },

    #[error("populations sum to {sum}, expected 1 within {tolerance:e}")]
    UnnormalizedPopulations { sum: f64, tolerance: f64 },

    #[error("noise model rejected: {reason}")]
    InvalidNoise { reason: String },

    #[error("source model rejected: {reason}")]
    InvalidSource { reason: String },
}
