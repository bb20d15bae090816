use thiserror::Error;

/// Errors raised by state construction, linear algebra and predictors.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("level mismatch: expected d = {expected}, found d = {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("bad particle subset: {0}")]
    BadSubset(String),

    #[error("outcome has probability {probability:e}, below the zero threshold")]
    ZeroProbabilityOutcome { probability: f64 },

    #[error("dimension {level}^{particles} exceeds the dense cap of 2^22 amplitudes")]
    DimensionTooLarge { level: usize, particles: usize },

    #[error("bad label: {0}")]
    BadLabel(String),

    #[error("bad scenario: {0}")]
    BadScenario(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
