//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or combining exact
/// incidence-algebra data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31 - 1")]
    ModulusTooLarge(u64),
    #[error("malformed field spec `{0}`, expected `q` or `gf:<p>`")]
    MalformedFieldSpec(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("invalid element name `{0}`: must be nonempty and free of '[', ']', '(', ')' and ','")]
    InvalidElementName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("antisymmetry violated: {0}\u{2264}{1}\u{2264}{0}")]
    AntisymmetryViolation(String, String),
    #[error("{what} limited to {limit}, got {got}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("elements are not comparable: {0} \u{2270} {1}")]
    NotComparable(String, String),
    #[error("map is not an order automorphism: {0}")]
    NotOrderAutomorphism(String),

    #[error("operands live on different posets")]
    PosetMismatch,
    #[error("function is not invertible: zero diagonal value at {0}")]
    NotInvertible(String),

    #[error("system value missing for pair ({0},{1})")]
    MissingSystemValue(String, String),
    #[error("system value for pair ({0},{1}) is zero")]
    ZeroSystemValue(String, String),
    #[error("system relation violated on {0} < {1} < {2}")]
    SystemRelationViolation(String, String, String),

    #[error("linear map image missing for interval {0}")]
    MissingImage(String),
    #[error("not a coalgebra morphism: {law} law fails at {interval}")]
    NotCoalgebraMorphism { interval: String, law: &'static str },
    #[error("not a coalgebra derivation: derivation law fails at {0}")]
    NotCoalgebraDerivation(String),
    #[error("map is not bijective")]
    NotBijective,
    #[error("not an algebra automorphism: {0}")]
    NotAlgebraAutomorphism(String),
    #[error("not an algebra derivation: {0}")]
    NotAlgebraDerivation(String),
    #[error("decomposition inconsistency: {0}")]
    DecompositionInconsistency(String),

    #[error("schema error: {0}")]
    Schema(String),
    #[error("unresolved poset reference `{0}`")]
    UnresolvedPosetRef(String),
}
