use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("generator {0} is not positive")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(i64),
    #[error("{0} exceeds the supported size")]
    TooLarge(&'static str),
    #[error("{0} is not a nonzero element of the semigroup")]
    NotInSemigroup(i64),
    #[error("operands live over different semigroups")]
    AmbientMismatch,
    #[error("second set is not contained in the first")]
    NotContained,
    #[error("ideal is not a proper ideal of the ring")]
    NotProperIdeal,
    #[error("exponent must be at least 1, got {0}")]
    InvalidExponent(u32),
    #[error("iteration cap {0} exceeded")]
    SafetyCapExceeded(u64),
    #[error("truncation bound {bound} too small (need at least {needed})")]
    BoundTooSmall { bound: i64, needed: i64 },
    #[error("query at {0} lies beyond the truncation bound")]
    BeyondBound(i64),
    #[error("colon chain did not stabilise within {0} steps")]
    NoStabilization(u64),
}

impl Error {
    /// Internal guards, as opposed to invalid user input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::SafetyCapExceeded(_)
                | Error::BoundTooSmall { .. }
                | Error::BeyondBound(_)
                | Error::NoStabilization(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::NonPositiveGenerator(_) => "NonPositiveGenerator",
            Error::GcdNotOne(_) => "GcdNotOne",
            Error::TooLarge(_) => "TooLarge",
            Error::NotInSemigroup(_) => "NotInSemigroup",
            Error::AmbientMismatch => "AmbientMismatch",
            Error::NotContained => "NotContained",
            Error::NotProperIdeal => "NotProperIdeal",
            Error::InvalidExponent(_) => "InvalidExponent",
            Error::SafetyCapExceeded(_) => "SafetyCapExceeded",
            Error::BoundTooSmall { .. } => "BoundTooSmall",
            Error::BeyondBound(_) => "BeyondBound",
            Error::NoStabilization(_) => "NoStabilization",
        }
    }
}
