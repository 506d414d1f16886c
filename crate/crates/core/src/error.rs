use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element {element} does not belong to group {group}")]
    ElementMismatch { element: String, group: String },

    #[error("group order {order} exceeds the configured cap of {cap}")]
    CapExceeded { order: u128, cap: u64 },

    #[error("the generator tuple does not generate {group}")]
    NotGenerating { group: String },

    #[error("invalid exponent alpha = {0}; exponents must be positive and finite")]
    InvalidAlpha(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation requires an abelian group, got {0}")]
    NotAbelian(String),

    #[error("unexpected walk shape: {0}")]
    WrongShape(String),

    #[error("label budget of {budget} exceeded at element index {element}")]
    LabelOverflow { element: usize, budget: usize },

    #[error("wrap truncation error {error:e} exceeds tolerance {tolerance:e}")]
    TailTolerance { error: f64, tolerance: f64 },

    #[error("total variation never reached 1/4 within the horizon ({horizon})")]
    HorizonTooShort { horizon: f64 },

    #[error("envelope fit needs at least 3 usable points, got {0}")]
    DegenerateFit(usize),

    #[error("exponential series did not converge within {terms} terms at t = {time}")]
    SeriesTruncation { time: f64, terms: usize },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}
