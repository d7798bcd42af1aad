use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bernoulli cache holds {have} entries but index {needed} is required")]
    CacheTooShort { needed: usize, have: usize },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("divisor series has zero constant term")]
    NonUnitDivisor,

    #[error("unknown bernoulli method `{0}` (expected recurrence, series or akiyama_tanigawa)")]
    UnknownMethod(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("{name} takes {expected} free parameters, got {got}")]
    Arity {
        name: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("zekiri_bencherif requires odd q, got q = {0}")]
    EvenQ(usize),

    #[error("malformed cache file at line {line}: {reason}")]
    CacheFormat { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}
