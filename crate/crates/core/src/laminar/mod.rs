//! Laminar matroid secretary algorithms in the random-order model.
//!
//! Both algorithms observe a binomially sized prefix of the arrivals, compute
//! the sample optimum, cut the consecutively numbered ground set into parts
//! any transversal of which is independent, and then run one classical
//! secretary rule per part on the remaining arrivals.

mod algorithms;
mod numbering;
mod scheme;

pub use algorithms::{
    run_improved_laminar, run_simple_laminar, LaminarOutcome, LaminarSecretary, Parity,
    Phase2Order, IMPROVED_SAMPLE_PROBABILITY, SIMPLE_SAMPLE_PROBABILITY,
};
pub use numbering::{consecutive_order, ConsecutiveOrder};
pub use scheme::{interval_partition, odd_even_parts, PartitionScheme, SchemeKind};

use thiserror::Error;

use crate::error::MatroidError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaminarError {
    #[error("the laminar algorithms need a laminar matroid, got {0}")]
    NotLaminar(&'static str),
    #[error("the sample optimum is empty; use the whole-set scheme")]
    EmptySampleOptimum,
    #[error("the anchor set is not independent")]
    Dependent,
    #[error("sampling probability {0} is not in (0, 1)")]
    InvalidProbability(f64),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}
