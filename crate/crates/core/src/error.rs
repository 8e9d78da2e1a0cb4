use thiserror::Error;

/// Every failure the library reports. Variants name the violated invariant so
/// the CLI can surface it verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unsupported base ring: {0}")]
    UnsupportedBase(String),

    #[error("degenerate pairing")]
    DegeneratePairing,

    #[error("lattice {0} is not contained in the target lattice")]
    NotContained(&'static str),

    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),

    #[error("unit law fails on basis element {0}")]
    UnitLaw(usize),

    #[error("grading violated: b_{0} * b_{1} has support on b_{2}")]
    Grading(usize, usize, usize),

    #[error("parity violated: b_{0} * b_{1} has support on b_{2}")]
    Parity(usize, usize, usize),

    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("invalid idempotent decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("degree {0} out of range 0..={1}")]
    DegreeOutOfRange(u32, u32),

    #[error("non-homogeneous basis element {0}")]
    NotHomogeneous(usize),

    #[error("lattice is not closed under multiplication")]
    NotClosed,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("tensor rank {0} exceeds cap {1}")]
    CapExceeded(u128, u128),

    #[error("index too large for oracle: p-part {0} exceeds cap {1}")]
    IndexTooLarge(String, u64),

    #[error("unknown provenance: {0}")]
    UnknownProvenance(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("invalid sandwich: {0}")]
    InvalidSandwich(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
