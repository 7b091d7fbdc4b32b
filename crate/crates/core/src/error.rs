use thiserror::Error;

/// Errors raised by set construction, operators, the driver and problem builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("non-finite value at iteration {iteration}")]
    Numerical { iteration: usize },

    #[error("parameter out of range: {0}")]
    Param(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("circumcenter undefined: three distinct collinear points")]
    DegenerateTriangle,

    #[error("solve report carries no shadow point")]
    MissingShadow,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("reference density is negative on the interval (min value {min_value})")]
    NotValidAsReference { min_value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
