use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m^H| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {0} is not a power of two")]
    NotQubitDimension(usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("marginals are inconsistent with the joint state: max deviation {deviation:.3e}")]
    InconsistentMarginals { deviation: f64 },

    #[error("tripartite state is not pure: purity {purity:.12}")]
    MixedState { purity: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid variable groups: {0}")]
    InvalidGroups(String),

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    /// Failures of the numerical machinery itself, as opposed to bad input.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
