use thiserror::Error;

/// Errors raised by the algebra and certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} out of range (expected 1..=64)")]
    DegreeOutOfRange(u32),

    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { n: u32, modulus: u128 },

    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u128),

    #[error("operands live in different fields")]
    ContextMismatch,

    #[error("element {bits:#x} does not fit in GF(2^{n})")]
    ElementOutOfRange { n: u32, bits: u64 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("alpha must be nonzero")]
    ZeroAlpha,

    #[error("polynomial degree {0} is not a multiple of 4")]
    DegreeNotMultipleOfFour(usize),

    #[error("{0} is not of the form 2^r (2^l + 1) with r >= 2, l >= 1")]
    NotSpecialShape(u64),

    #[error("degree {0} is not admissible (need m = 2^r (2^l + 1), r >= 2, l >= 1, gcd(r, l) <= 2)")]
    Inadmissible(u64),

    #[error("degree {0} must be even and at least 4")]
    OddDegree(u64),

    #[error("field GF(2^{n}) is too large for {what}")]
    FieldTooLarge { n: u32, what: &'static str },

    #[error("field GF(2^{n}) is too small: {what}")]
    FieldTooSmall { n: u32, what: String },

    #[error("polynomial has a nonzero coefficient at odd exponent {0}")]
    OddExponent(usize),

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("repeated abscissa {0:#x} in interpolation points")]
    RepeatedAbscissa(u64),

    #[error("degree {0} is not odd")]
    EvenDegree(usize),

    #[error("critical points are degenerate")]
    DegenerateCriticalPoints,

    #[error("second leading coefficient a1 is zero")]
    VanishingSecondCoefficient,

    #[error("multiplicative order {order} of 2 modulo {d} exceeds 64")]
    OrderTooLarge { d: u64, order: u64 },

    #[error("{0} is not an odd positive integer")]
    NotOdd(u64),

    #[error("extension degree {ext} is not a multiple of {base}")]
    NotSubfield { base: u32, ext: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
