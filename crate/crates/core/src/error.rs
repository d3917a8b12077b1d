use std::fmt;

use thiserror::Error;

/// Errors produced by the workbench operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A real-valued parameter fell outside the monotone regime of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// An edge had the wrong number of vertices for the requested count.
    #[error("uniformity error: edge {edge} has {found} vertices, expected {expected}")]
    Uniformity {
        edge: usize,
        expected: String,
        found: usize,
    },

    #[error("color error: {0}")]
    Color(String),

    /// A color class needed as a denominator is empty.
    #[error("color class `{0}` is empty")]
    EmptyColorClass(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// The requested computation exceeds a configured capacity cap.
    #[error("capacity exceeded: {what} needs {requested}, cap is {limit}")]
    Capacity {
        what: String,
        requested: u128,
        limit: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A set is not compatible with a forbidding system.
    #[error("set is not compatible: good multiset {multiset:?} has bad extension {element} outside the set")]
    Incompatible { multiset: Vec<u32>, element: u32 },

    /// Two compatible sets produced a common tuple.
    #[error("tuple families of sets {first} and {second} share the tuple {tuple:?}")]
    NotDisjoint {
        first: usize,
        second: usize,
        tuple: Vec<u32>,
    },

    /// A joint distribution does not respect a declared support partition.
    #[error("partition error: {0}")]
    Partition(String),

    #[error("marginal laws differ: {0}")]
    UnequalLaws(String),

    /// A good/bad split is not c-regular or a rectangle is not balanced.
    #[error("regularity error: {0}")]
    Regularity(String),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("negative weight {weight} on edge {edge}")]
    NegativeWeight { edge: usize, weight: i64 },
}

impl Error {
    pub(crate) fn domain(msg: impl fmt::Display) -> Self {
        Error::Domain(msg.to_string())
    }

    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::Invalid(msg.to_string())
    }

    pub(crate) fn precondition(msg: impl fmt::Display) -> Self {
        Error::Precondition(msg.to_string())
    }

    pub(crate) fn capacity(what: impl fmt::Display, requested: u128, limit: u128) -> Self {
        Error::Capacity {
            what: what.to_string(),
            requested,
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
