use thiserror::Error;

/// Errors produced while constructing groups, enumerating lattices or
/// parsing group specifications.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("capacity exceeded: {what} (limit {limit}, reached {reached})")]
    Capacity {
        what: String,
        limit: usize,
        reached: usize,
    },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("members do not form a sublattice: {0}")]
    NotASublattice(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid spec at position {position}: {message}")]
    InvalidSpec { position: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn action(msg: impl Into<String>) -> Self {
        Error::InvalidAction(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, limit: usize, reached: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            limit,
            reached,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
