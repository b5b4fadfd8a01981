use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// The SCA surrogate is identically zero at a zero expansion point.
    #[error("initial weights must be nonzero")]
    ZeroInitialWeights,

    #[error("convex subproblem infeasible (best residual {residual:e})")]
    Infeasible { residual: f64 },

    #[error("scenario file: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_)
            | Error::InvalidScenario(_)
            | Error::InvalidParameter(_)
            | Error::LengthMismatch { .. } => 1,
            Error::ZeroInitialWeights | Error::Infeasible { .. } => 2,
            Error::Io(_) | Error::Json(_) => 3,
        }
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
