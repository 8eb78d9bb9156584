use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument hit a pole of the function being evaluated.
    #[error("pole: {0}")]
    Pole(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// The series does not converge for the given argument.
    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("requested precision cannot be reached: {0}")]
    PrecisionUnachievable(String),

    /// A divisor's error interval contains zero.
    #[error("division by a quantity indistinguishable from zero")]
    DivisionByZero,

    #[error("series does not terminate: {0}")]
    NonTerminating(String),

    #[error("zero denominator at index {index}: {what}")]
    ZeroDenominator { index: i64, what: String },

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    /// Integer relation search cannot be trusted at this precision.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("parse error: {0}")]
    Parse(String),
}
