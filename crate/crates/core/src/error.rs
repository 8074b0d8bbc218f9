use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {size} exceeds enumeration budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("GF(p^{sub}) is not a subfield of GF(p^{sup})")]
    NotSubfield { sub: usize, sup: usize },
    #[error("no root of the sub-field modulus found in the super-field")]
    EmbeddingFailed,
    #[error("element is not in the image of the embedding")]
    NotInImage,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a representation: {0}")]
    NotHomomorphism(String),
    #[error("cocycle datum invalid: {0}")]
    InvalidCocycle(String),
    #[error("coset does not generate the quotient")]
    NotGenerator,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix budget exceeded: dimension {dim} > {budget}")]
    MatrixBudget { dim: u128, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
