use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels and the identity checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible: nonzero remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("series constant term {constant} is not a unit")]
    NotAUnit { constant: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter collision: lambda = {lambda} equals gamma{}", .k.map(|k| format!(" = zeta_n^-{k} (k = {k})")).unwrap_or_default())]
    ParameterCollision { lambda: String, k: Option<i64> },
    #[error("negative power p = {p} with gamma = 1")]
    InvalidPower { p: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported precision: {0} bits (f64 embedding provides exactly 53)")]
    UnsupportedPrecision(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
