use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Parameters outside a family's declared domain.
    #[error("{family}: parameters out of domain ({constraint})")]
    Domain {
        family: &'static str,
        constraint: String,
    },

    #[error(
        "unsupported class: coefficient of u^{degree} is nonzero (only degree <= 2 is normalized)"
    )]
    UnsupportedDegree { degree: usize },

    #[error("truncation degrees differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    /// A consistency check that should never fail did.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
