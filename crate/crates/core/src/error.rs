//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("invalid family m={0}: m must be p or 2p with p an odd prime")]
    BadFamily(u64),

    #[error("prime {q} divides 2m={two_m}: bad reduction")]
    BadReduction { q: u64, two_m: u64 },

    #[error("field size {size} exceeds the enumeration bound {bound}")]
    EnumerationBound { size: u128, bound: u64 },

    #[error("no irreducible modulus of degree {k} found over F_{q}")]
    NoModulus { q: u64, k: u32 },

    #[error("character order {d} does not divide {q}-1")]
    BadCharacterOrder { d: u64, q: u64 },

    #[error("invalid exponent pair ({g1},{g2}) mod {p}: g1, g2, g1+g2 must be nonzero")]
    BadExponentPair { g1: u64, g2: u64, p: u64 },

    #[error("{a} does not generate the units mod {m}: order {order} < {expected}")]
    NotAGenerator { a: u64, m: u64, order: u64, expected: u64 },

    #[error("cyclotomic level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("matrix is not unitary; refusing to invert by conjugate transpose")]
    NotUnitary,

    #[error("component index out of range: k={k}, j={j} for m={m}")]
    BadComponent { k: u32, j: u32, m: u64 },

    #[error("coefficient index {i} out of range 1..={genus}")]
    BadCoefficientIndex { i: u32, genus: u32 },

    #[error("depth {depth} exceeds genus {genus}")]
    BadDepth { depth: u32, genus: u32 },

    #[error("term budget exceeded: {terms} > {budget} terms")]
    TermBudget { terms: usize, budget: usize },

    #[error("cache {path} is corrupt at line {line}: {reason}")]
    CacheCorrupt {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("expected a point on the unit circle, got modulus {0}")]
    NotUnitModulus(f64),

    #[error("empty record stream")]
    EmptyStream,

    #[error("base field Q(i) only applies to the even family m=2p")]
    BadBaseField,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code: 1 for domain errors, 2 for internal/resource failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CacheCorrupt { .. } | Error::TermBudget { .. } | Error::Io(_) => 2,
            _ => 1,
        }
    }
}
