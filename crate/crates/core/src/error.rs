use thiserror::Error;

/// Errors raised by the arithmetic, enumeration and decision routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial {0} is not monic")]
    NotMonic(String),

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),

    #[error("modulus {0} is too large for residue arithmetic (limit {limit})", limit = u32::MAX)]
    ModulusTooLarge(String),

    #[error("enumeration needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("elements belong to different splitting algebras")]
    ParentMismatch,

    #[error("need at least {needed} nodes for a polynomial of degree {needed}, got {given}")]
    TooFewNodes { needed: usize, given: usize },

    #[error("degree {degree} exceeds the supported limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("polynomial {0} is reducible over Q")]
    Reducible(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
