use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("base field degree {base} does not divide extension degree {degree}")]
    BadBase { base: usize, degree: usize },
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("both homogeneous forms vanish at the point")]
    Indeterminate,
    #[error("Mobius transformation has zero determinant")]
    SingularMobius,
    #[error("map is inseparable (its derivative vanishes)")]
    InseparableMap,
    #[error("unsupported degree {d} for family {family}")]
    UnsupportedDegree { family: String, d: usize },
    #[error("exact result needs about {bits} denominator bits, over the cap of {cap}")]
    ExactOverflow { bits: u64, cap: u64 },
    #[error("explicit enumeration over {0} elements is too large")]
    TooLarge(String),
    #[error("outside the hypotheses of the bound: {0}")]
    OutOfHypothesis(String),
    #[error("outside the domain of the formula: {0}")]
    OutOfDomain(String),
    #[error("logarithm argument is not usable: {0}")]
    NonpositiveLogArgument(String),
    #[error("point [0:0] is not in the projective line")]
    ZeroPoint,
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("critical set must be nonempty")]
    EmptyCritSet,
    #[error("orbit entry exceeds the size cap of {0}")]
    DegreeOverflow(u64),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at position {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
