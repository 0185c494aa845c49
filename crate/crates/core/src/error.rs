use thiserror::Error;

/// Errors produced by construction, coding and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("depth mismatch: expected n = {expected}, got n = {got}")]
    DepthMismatch { expected: usize, got: usize },

    #[error("output alphabet of size {size} exceeds the cap of {cap}")]
    AlphabetCap { size: usize, cap: usize },

    #[error("Gaussian-approximation inversion failed at level {level}, index {index}")]
    GaInversion { level: usize, index: usize },

    #[error("unreachable target: {0}")]
    InvalidTarget(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AlphabetCap { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
