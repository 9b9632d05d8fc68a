use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the function.
    #[error("{name} must be {requirement}, got {value}")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The query point is not in the open support `(-ct, ct)`.
    #[error("x = {x} is not inside the open support (-{ct}, {ct})")]
    OutsideSupport { x: f64, ct: f64 },

    #[error("integration interval [{a}, {b}] is not contained in [{lo}, {hi}]")]
    IntervalOutsideSupport { a: f64, b: f64, lo: f64, hi: f64 },

    #[error("quadrature stopped after {evaluations} evaluations with error estimate {error_estimate:e} (value {value})")]
    QuadratureBudget {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("need at least {needed} usable points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("time list must be strictly increasing")]
    UnsortedTimes,

    #[error("batch was simulated with {what} = {batch}, but {requested} was requested")]
    BatchMismatch {
        what: &'static str,
        batch: f64,
        requested: f64,
    },

    #[error("sample batch is empty")]
    EmptyBatch,
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            requirement: "finite and > 0",
            value,
        })
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            requirement: "finite and >= 0",
            value,
        })
    }
}
