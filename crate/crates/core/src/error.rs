use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// The variants mirror the failure modes of the individual operations; most
/// of them carry just enough context to produce a useful one-line message.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// A constant or root would need a cyclotomic field whose conductor
    /// exceeds the configured cap.
    #[error("field too small: conductor {needed} exceeds cap {cap}")]
    FieldTooSmall { needed: u64, cap: u32 },

    #[error("division by zero")]
    DivisionByZero,

    /// A documented precondition of an operation was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not bipartite: {0}")]
    NotBipartite(String),

    #[error("singular linear system")]
    SingularSystem,

    #[error("singular basis matrix")]
    SingularBasis,

    #[error("basis is not orthogonal")]
    NotOrthogonal,

    /// An eigenvalue (or the square root it needs) is not expressible in the
    /// capped working field. Reported instead of guessing.
    #[error("eigenvalues outside the working field")]
    EigenvaluesOutsideField,

    /// The order / order-2 / Klein-four signature of a closed matrix set does
    /// not match any finite rotation group; indicates an upstream bug.
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("order-2 element has nonzero trace")]
    TraceNonzero,

    #[error("no transpose-closed Klein four-subgroup")]
    NoClosedK4,

    #[error("arity too large: {0}")]
    ArityTooLarge(usize),

    #[error("odd arity: {0}")]
    OddArity(usize),

    #[error("no consistent scaling constant for the bit-flip relation")]
    NoConsistentC,

    #[error("root outside the working field")]
    RootOutsideField,

    #[error("edge index out of range: {0}")]
    EdgeNotFound(usize),

    #[error("no proportional power pair within bound {0}")]
    NotFoundWithinBound(u32),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// An identity that must hold by construction failed; this should never
    /// fire and indicates a bug in the arithmetic layers.
    #[error("identity assertion failed: {0}")]
    AssertionFailed(String),

    #[error("{0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
