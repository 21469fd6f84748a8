use num_bigint::BigInt;
use thiserror::Error;

use crate::ideals::MonomialSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid family: need {requirement}, got n={n}, m={m}")]
    InvalidFamily {
        n: u32,
        m: u32,
        requirement: &'static str,
    },
    #[error("sequence entry {value} at position {index} exceeds the bound m-1 = {bound}")]
    SequenceEntryOutOfRange { index: usize, value: u32, bound: u32 },
    #[error("sequence length {got} does not match n - k + 1 = {expected}")]
    SequenceLengthMismatch { expected: i64, got: usize },
    #[error("support element {value} outside 1..={n}")]
    SupportOutOfRange { value: u32, n: u32 },
    #[error("monomial {support} lies in the run ideal; no bounded sequence represents it")]
    MonomialInIdeal { support: MonomialSet },
    #[error("generator {gen} of the inner ideal is not contained in the outer ideal")]
    NotContained { gen: MonomialSet },
    #[error("enumeration over n={n} variables exceeds the cap {cap}")]
    EnumerationCapExceeded { n: u32, cap: u32 },
    #[error("alpha-vector must have length n+1 = {expected}, got {got}")]
    AlphaLength { expected: usize, got: usize },
    #[error("alpha_{k} = {value} outside 0..=binom(n, k)")]
    AlphaOutOfRange { k: usize, value: BigInt },
    #[error("the zero alpha-vector has no depth certificate")]
    ZeroAlphaVector,
    #[error("candidate depth {d} out of range 0..={n}")]
    DepthOutOfRange { d: i64, n: u32 },
    #[error("ideal spec needs at least one variable, got n={n}")]
    SpecVariables { n: u32 },
    #[error("cannot parse ideal spec: {0}")]
    SpecParse(#[from] serde_json::Error),
    #[error("empty verification grid")]
    EmptyGrid,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, Error>;
