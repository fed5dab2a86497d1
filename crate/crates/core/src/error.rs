use thiserror::Error;

use crate::series::CoefficientRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: CoefficientRing, right: CoefficientRing },
    #[error("constant term {constant} is not a unit in {ring}")]
    NonUnit { constant: String, ring: CoefficientRing },
    #[error("modulus {0} outside [2, 2^31)")]
    InvalidModulus(u64),
    #[error("cannot reduce {from} to {to}")]
    IncompatibleReduction { from: CoefficientRing, to: CoefficientRing },
    #[error("series order {have} too small, need at least {need}")]
    OrderTooSmall { have: usize, need: usize },
    #[error("{delta} does not divide level {level}")]
    NotADivisor { delta: u64, level: u64 },
    #[error("weight {twice}/2 is not integral")]
    NonIntegralWeight { twice: i64 },
    #[error("no level multiplier M ≤ {cap} satisfies both 24-conditions")]
    NoLevel { cap: u64 },
    #[error("neither {0} nor {0}/2 is squarefree")]
    CosetHypothesis(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("oracle limited to n ≤ {limit}, got {n}")]
    ScaleExceeded { n: usize, limit: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("expression error: {0}")]
    Expr(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
