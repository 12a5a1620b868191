use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("modular ranks disagree across primes: {ranks:?}")]
    PrimeDisagreement { ranks: Vec<usize> },

    #[error("could not find a usable prime after {attempts} draws")]
    PrimeSearchExhausted { attempts: usize },

    #[error("structure constants are not associative at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("supplied unit is not a two-sided unit (fails on basis element {index})")]
    NotAUnit { index: usize },

    #[error("matrix `{name}` is not a derivation: Leibniz rule fails on basis pair ({i}, {j})")]
    NotADerivation { name: String, i: usize, j: usize },

    #[error("center does not split over the rationals: {detail}")]
    NonSplitCenter { detail: String },

    #[error("internal verification failed: {0}")]
    InternalVerificationFailed(String),

    #[error("size cap exceeded: {what} needs {needed}, budget is {budget}")]
    SizeCap {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("exponent word cap exceeded: word of length {length} with cap {cap}")]
    WordCapExceeded { length: usize, cap: usize },

    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("generator alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
