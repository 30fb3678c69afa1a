use thiserror::Error;

/// Errors raised by the arithmetic, bound and summation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("delta is zero")]
    DeltaZero,
    #[error("delta {0} is not squarefree")]
    DeltaNotSquarefree(i64),
    #[error("delta {0} is congruent to 1 mod 4")]
    DeltaOneModFour(i64),
    #[error("delta {0} is outside the supported range")]
    DeltaOutOfRange(i64),
    #[error("coefficients b = {b}, c = {c} are outside the supported range")]
    CoefficientOutOfRange { b: i64, c: i64 },
    #[error("{n} is outside the factorization range (table limit {limit})")]
    OutOfRange { n: u64, limit: u64 },
    #[error("f({n}) = {value} is not positive")]
    NonPositiveValue { n: u64, value: i128 },
    #[error("f({n}) = {value} does not fit in 64 bits")]
    ValueTooLarge { n: u64, value: i128 },
    #[error("f(N) = {f_n} is smaller than f(1) = {f_one}")]
    EndpointBelowStart { f_n: i128, f_one: i128 },
    #[error("N must be at least 1")]
    EmptyRange,
    #[error("N = {0} exceeds the supported range")]
    RangeTooLarge(u64),
    #[error("modulus {0} must exceed 1")]
    InvalidModulus(u64),
    #[error("epsilon must be a positive finite number")]
    InvalidEpsilon,
}
