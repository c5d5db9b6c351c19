use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series is not a unit (zero or vanishing leading coefficient)")]
    NonUnit,
    #[error("exponential requires strictly positive valuation")]
    NonPositiveValuation,
    #[error("exponential requires every term to carry a coupling constant")]
    TFreeTerm,
    #[error("cannot expand {0} without a finite window")]
    UnboundedWindow(&'static str),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
