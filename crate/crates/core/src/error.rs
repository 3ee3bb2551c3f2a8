use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameters too large for exact enumeration: {0}")]
    TooLarge(String),
    #[error("residue characteristic 2 is not supported here")]
    Char2Unsupported,
    #[error("group order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("enumeration cap exceeded: {0}")]
    EnumerationCap(String),
    #[error("central character of level {level} is not generic")]
    NotGeneric { level: usize },
    #[error("group is not two-step nilpotent")]
    NotTwoStep,
    #[error("group is not a p-group")]
    NotPGroup,
    #[error("commutator subgroup is not cyclic")]
    CommutatorNotCyclic,
    #[error("index [G:Z(G)] = {0} is not a perfect square")]
    NonSquareIndex(usize),
    #[error("central characters in the pool do not span the dual of Omega_1(Z)")]
    PoolDoesNotSpan,
    #[error("element list is not a subgroup")]
    NotSubgroup,
    #[error("character is not a homomorphism on the subgroup")]
    ChiNotHomomorphism,
    #[error("level profile violates the basis constraints: {0}")]
    ConstraintViolation(String),
    #[error("no suitable modular prime found for the character table")]
    ModularPrimeNotFound,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
