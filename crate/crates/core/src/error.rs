use thiserror::Error;

/// Every failure the engine can report.
///
/// Precondition failures (a theorem's hypothesis does not hold for the input)
/// are kept distinct from resource failures so the front end can map them to
/// different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a positive value, got {0}")]
    NonPositive(String),
    #[error("even root of a negative number")]
    EvenRootOfNegative,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("zero element")]
    ZeroElement,
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("polynomial has a root of unity among its roots")]
    RootOfUnity,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("degree ratio equals 1")]
    RatioOne,
    #[error("Frobenius twist requested in characteristic zero")]
    FrobeniusInCharZero,
    #[error("automorphism index must be nonzero")]
    ZeroIndex,
    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("presentation failed validation: {0}")]
    ValidationFailed(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal an unmet mathematical precondition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotIrreducible
                | Error::RootOfUnity
                | Error::ZeroConstantTerm
                | Error::RatioOne
                | Error::FrobeniusInCharZero
                | Error::ZeroIndex
                | Error::InvalidCharacteristic(_)
                | Error::ValidationFailed(_)
                | Error::NonPositive(_)
                | Error::EvenRootOfNegative
                | Error::NotMonic
                | Error::ZeroPolynomial
                | Error::ConstantPolynomial
                | Error::ZeroElement
                | Error::BothZero
                | Error::DivisionByZero
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
