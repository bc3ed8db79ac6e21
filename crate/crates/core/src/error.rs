use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument must be a positive integer")]
    NotPositive,

    #[error("{n} exceeds the sieve limit {limit}")]
    BeyondSieve { n: u64, limit: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An internal identity or divisibility check failed. Indicates an arithmetic bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("g = {kind} cannot be evaluated in the {domain} domain")]
    DomainMismatch { kind: String, domain: &'static str },

    #[error("argument out of domain: {0}")]
    OutOfDomain(String),

    #[error("at n = {n}: {source}")]
    At { n: u64, source: Box<Error> },
}

impl Error {
    pub(crate) fn at(self, n: u64) -> Self {
        match self {
            at @ Error::At { .. } => at,
            other => Error::At {
                n,
                source: Box::new(other),
            },
        }
    }
}
