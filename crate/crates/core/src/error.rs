use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("variable `{0}` is not free (it does not occur in exactly one minimal generator)")]
    NotFree(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("underlying graph has no perfect matching by leaves")]
    NoLeafMatching,

    #[error("{what}: size {actual} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        actual: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, cap: usize, actual: usize) -> Self {
        Error::CapExceeded { what, cap, actual }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
