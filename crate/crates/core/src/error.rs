use thiserror::Error;

/// Errors raised by the library. Variants map one-to-one onto the failure
/// modes of the individual operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("arrow `{arrow}` references missing vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("quiver is not a pseudotree with a cycle")]
    NotPseudotree,
    #[error("domain is not a single cycle")]
    NotACycle,
    #[error("windings have different codomains")]
    CodomainMismatch,
    #[error("not a valid quiver map: {0}")]
    InvalidQuiverMap(String),
    #[error("not a winding: {0}")]
    InvalidWinding(String),
    #[error("closure violation: {0}")]
    ClosureViolation(String),
    #[error("triangle violation: {0}")]
    TriangleViolation(String),
    #[error("dimension vector exceeds the representation")]
    DimTooLarge,
    #[error("not a subrepresentation: {0}")]
    NotASubrep(String),
    #[error("not a subquiver: {0}")]
    NotASubquiver(String),
    #[error("arrow color `{0}` used by both pieces")]
    ColorCollision(String),
    #[error("glued vertices lie over different base vertices")]
    VertexColorMismatch,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("nice length is infinite")]
    InfiniteNiceLength,
    #[error("the two vertices coincide")]
    SameVertex,
    #[error("niceness of the representation is not certified")]
    NicenessUnverified,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("unsupported prime {0}")]
    BadPrime(u64),
    #[error("point count is not polynomial in q")]
    NonPolynomialCount,
    #[error("elements live over different base quivers")]
    BaseMismatch,
    #[error("size budget exceeded: {0}")]
    SizeBudgetExceeded(String),
    #[error("quiver is not a tree")]
    NotATree,
    #[error("quiver is not of affine type A")]
    NotAffine,
    #[error("unsupported quiver: {0}")]
    UnsupportedQuiver(String),
    #[error("representation is not indecomposable")]
    NotIndecomposable,
    #[error("representation is not nilpotent")]
    NotNilpotent,
}

pub type Result<T> = std::result::Result<T, Error>;
