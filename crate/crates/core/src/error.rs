use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("digit sum is undefined for n = 0")]
    ZeroDigitSum,
    #[error("base {0} is below 2")]
    BadBase(u64),
    #[error("precision must be at least 1, got {0}")]
    BadPrecision(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not a p-adic unit (valuation {0})")]
    NotUnit(i64),
    #[error("value is not a principal unit")]
    NotPrincipalUnit,
    #[error("value lies outside Z_p (valuation {0})")]
    NotIntegral(i64),
    #[error("divergent series: {0}")]
    DivergentSeries(String),
    #[error("mismatched p-adic contexts: p = {0} vs p = {1}")]
    ContextMismatch(u64, u64),
    #[error("constant term of the series must be exactly 1")]
    ConstantTermNotOne,
    #[error("exact gexp needs f(0) = 0; factor exp(f(0)) out first")]
    NonzeroConstantTerm,
    #[error("series coefficient {0} is not p-integral")]
    CoefficientNotIntegral(usize),
    #[error("f(0) lies outside the domain of convergence of exp")]
    ConstantOutsideExpDomain,
    #[error("f'(0) is not a principal unit")]
    DerivativeNotPrincipal,
    #[error("series order {have} is too short, need {need}")]
    SeriesTooShort { have: usize, need: usize },
    #[error("place excluded by P_r: v_{p}(r) = {v}")]
    PlaceExcluded { p: u64, v: i64 },
    #[error("r must be nonzero")]
    ZeroR,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature failed to converge: {0}")]
    NoConvergence(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
