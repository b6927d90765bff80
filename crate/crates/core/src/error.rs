use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {0} is not irreducible over F_p")]
    NotIrreducible(String),
    #[error("polynomial {0} is irreducible but its root does not generate F_q*")]
    NotPrimitive(String),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("companion orbit failed its invariants: {0}")]
    OrbitDegenerate(String),
    #[error("cyclotomic operands over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("group ring operands have different shapes")]
    ShapeMismatch,
    #[error("inverse character transform is not integral")]
    NotIntegral,
    #[error("determinant is not a rational integer")]
    NonRationalDeterminant,
    #[error("residue reconstruction failed the held-out prime check")]
    ReconstructionFailed,
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    #[error("A = {0} is not coprime to q - 1")]
    NotCoprime(BigInt),
    #[error("B = {b} is not congruent to A = {a} modulo {q}")]
    CongruenceViolation { a: BigInt, b: BigInt, q: u64 },
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
    #[error("the alpha polynomial does not miss exactly one monomial")]
    MissingMonomialNotUnique,
    #[error("q = {0} is not supported here")]
    UnsupportedQ(u64),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("coefficients of beta share the common factor {0}")]
    GcdFailure(BigInt),
    #[error("mismatch against reference values: {0}")]
    ReferenceMismatch(String),
    #[error("invalid start tuple: {0}")]
    InvalidStart(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
