use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("q = {q} is not supported: q must be a prime power greater than 2")]
    InvalidOrder { q: u32 },
    #[error("{p} is not prime")]
    NotPrime { p: u32 },
    #[error("no primitive polynomial of degree {degree} found over a field of order {base}")]
    NoPrimitivePolynomial { base: u32, degree: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("field level mismatch: {0}")]
    LevelMismatch(String),
    #[error("ambient mismatch: vectors of length {left} and {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("could not classify {what}: {detail}")]
    Unclassifiable { what: &'static str, detail: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
