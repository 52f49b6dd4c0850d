use thiserror::Error;

use crate::exact::Integer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The congruence is undefined: the denominator has no inverse modulo `modulus`.
    #[error("denominator {denominator} is not invertible modulo {modulus}")]
    NonInvertibleDenominator {
        denominator: Integer,
        modulus: Integer,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
