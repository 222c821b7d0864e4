use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no field with {p}^{n} elements is supported")]
    InvalidField { p: u32, n: u32 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("modulus {0} is not square-free")]
    NotSquareFree(String),
    #[error("modulus {0} is not a monic nonconstant polynomial")]
    BadModulus(String),
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("character is not primitive")]
    NotPrimitive,
    #[error("characters have different conductors")]
    ConductorMismatch,
    #[error("sign {sign} of the character is not congruent to -{weight} modulo q-1")]
    SignMismatch { sign: u32, weight: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("series is not an expansion in the parameter of level 1: {0}")]
    NotDescendable(String),
    #[error("degree bound {bound} cannot determine {precision} coefficients")]
    InsufficientDegreeBound { bound: u32, precision: usize },
    #[error("precision {have} is too small, {need} required")]
    PrecisionTooSmall { have: usize, need: usize },
    #[error("series carry no modular metadata (weight, type, nebentypus)")]
    MissingMetadata,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("prime {0} divides the level")]
    LevelPrime(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
