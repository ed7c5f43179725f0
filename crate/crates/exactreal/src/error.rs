use std::fmt;

/// Errors surfaced by the exact-arithmetic kernels.
///
/// Every inexact situation is an explicit error: there are no silent NaNs,
/// no silent overflow, and no silently widened enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealError {
    /// Exact dyadic arithmetic left the supported mantissa/exponent range.
    Overflow,
    /// Interval division by an interval containing zero.
    DivisionByZero,
    /// Argument outside a function's domain (`ln` of a nonpositive
    /// interval, `tan` across a pole, fractional power of a negative base).
    Domain(&'static str),
    /// A refiner or oracle broke its stated contract.
    ContractViolation(String),
    /// The requested precision could not be reached within budget.
    PrecisionUnreachable(String),
}

impl fmt::Display for RealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealError::Overflow => write!(f, "dyadic arithmetic overflow"),
            RealError::DivisionByZero => write!(f, "division by an interval containing zero"),
            RealError::Domain(what) => write!(f, "domain violation: {what}"),
            RealError::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            RealError::PrecisionUnreachable(msg) => write!(f, "precision unreachable: {msg}"),
        }
    }
}

impl std::error::Error for RealError {}
