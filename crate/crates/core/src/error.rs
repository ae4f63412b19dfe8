use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("enumeration cap exceeded: {what} needs more than {cap} items")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("algebra is not finite-dimensional (more than {0} nonzero paths)")]
    NotFiniteDimensional(usize),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("isomorphism undecided: every strategy exceeded its cap")]
    Undecided,
    #[error("new indecomposables still appear at the dimension bound {0}")]
    BoundExceeded(usize),
    #[error("unsupported algebra family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("the ambient indecomposable list is a bounded slice, not complete")]
    AmbientIncomplete,
    #[error("module has an indecomposable summand outside the ambient list")]
    NotInAmbient,
    #[error("torsion classes are not nested")]
    NotNested,
    #[error("not a Hasse cover")]
    NotACover,
    #[error("not a torsion class")]
    NotATorsionClass,
    #[error("class is not closed under extensions")]
    NotExtensionClosed,
    #[error("not a two-term silting object: {0}")]
    NotSilting(String),
    #[error("cover has no unique brick label")]
    NoBrickLabel,
    #[error("mutation triangle check failed: {0}")]
    TriangleCheckFailed(String),
    #[error("mutation leaves the two-term range")]
    LeavesTwoTermRange,
    #[error("index {0} out of range")]
    OutOfRange(usize),
}
