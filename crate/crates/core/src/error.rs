//! Shared error type. Construction errors name the violated condition so a
//! failed invariant is diagnosable from the message alone.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("node index {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("order cap exceeded: {partial} elements enumerated, cap {cap}")]
    OrderCapExceeded { partial: usize, cap: usize },

    #[error("degree cap exceeded: {degree} points over cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("not a subgroup of the ambient group: {0}")]
    NotASubgroup(&'static str),

    #[error("construction invariant violated: {0}")]
    Invariant(String),

    #[error("action is not transitive: reached {orbit_size} of {degree} points")]
    NotTransitive { orbit_size: usize, degree: usize },

    #[error("class functions live on different ambient groups")]
    AmbientMismatch,

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
