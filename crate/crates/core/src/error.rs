use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    /// Two consecutive arrows of a chain do not meet.
    #[error("endpoint mismatch at position {position}: {detail}")]
    EndpointMismatch { position: usize, detail: String },

    #[error("empty chain")]
    EmptyChain,

    #[error("morphism {0} has no inverse")]
    NotInvertible(String),

    #[error("family {family}: {detail}")]
    BadFamily { family: String, detail: String },

    #[error("missing family {0}")]
    MissingFamily(String),

    #[error("l and r disagree at the unit: l0 = {l0}, r0 = {r0}")]
    UnitorMismatch { l0: String, r0: String },

    #[error("object {0} has no weak inverse")]
    NoInverse(String),

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("missing zero isomorphism")]
    MissingZeroIso,

    #[error("precondition failed: {check}: {detail}")]
    PreconditionFailed { check: String, detail: String },

    #[error("presentation mismatch: expected {expected}, found {found}")]
    PresentationMismatch { expected: String, found: String },

    #[error("missing absorbing isomorphisms")]
    MissingAbsorbers,

    #[error("invalid modulus {0}")]
    InvalidModulus(u32),

    #[error("not a ring: {law} fails at {witness}")]
    NotARing { law: String, witness: String },
}

impl Error {
    pub(crate) fn precondition(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::PreconditionFailed {
            check: check.into(),
            detail: detail.into(),
        }
    }
}
