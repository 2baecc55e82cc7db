use thiserror::Error;

use crate::weight::ElementId;

/// Errors raised by matroid oracle queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("element {id} is outside the ground set of size {n}")]
    ElementOutOfRange { id: ElementId, n: usize },
    #[error("element {0} appears more than once in the query set")]
    DuplicateElement(ElementId),
}

/// Errors raised while validating a raw instance description.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("laminar sets {first:?} and {second:?} are neither nested nor disjoint")]
    CrossingSets {
        first: Vec<ElementId>,
        second: Vec<ElementId>,
    },
    #[error("element id {id} does not exist in a ground set of size {n}")]
    DanglingElement { id: usize, n: usize },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weight of element {id} is negative")]
    NegativeWeight { id: usize },
    #[error("weight of element {id} is not a comparable number")]
    NonFiniteWeight { id: usize },
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("element {id} is listed in more than one partition part")]
    OverlappingParts { id: usize },
    #[error("element {id} is listed twice in one set")]
    DuplicateMember { id: usize },
    #[error("{what} must have capacity at least 1")]
    ZeroCapacity { what: String },
    #[error("invalid instance: {0}")]
    Invalid(String),
}
