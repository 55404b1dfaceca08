use thiserror::Error;

/// Errors raised by series construction and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lowest coefficient {coeff} at q^{exp} is not a unit")]
    NonUnitLeading { exp: i64, coeff: String },

    #[error("series is zero below precision {prec}")]
    ZeroSeries { prec: i64 },

    #[error("infinite product with step {step} has infinitely many non-positive factors")]
    IllFormedInfinite { step: i64 },

    #[error("term valuations do not increase (argument exponent {arg_exp})")]
    DivergentTermOrder { arg_exp: i64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("joint precision {got} is below the requested order {wanted}")]
    InsufficientPrecision { wanted: i64, got: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
