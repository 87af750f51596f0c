use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter `{0}` has no value in the specialization")]
    UnboundParameter(String),
    #[error("denominator vanishes at the requested specialization")]
    PoleAtSpecialization,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("symbolic entry `{0}` cannot be reduced modulo a prime without a specialization")]
    ParameterInModP(String),
    #[error("denominator divisible by the prime {0}")]
    BadReduction(u64),
    #[error("monomial has an exponent above d-2: {0}")]
    NotReducedMonomial(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("tensor is not in the kernel of the multiplication map")]
    NotInKernel,
    #[error("the multiplication map is not an isomorphism (determinant is identically zero)")]
    NotIsomorphism,
    #[error("a_i + b_i h vanishes identically for pair {0}")]
    DegenerateDenominator(usize),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("socle check failed: {0}")]
    Socle(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
