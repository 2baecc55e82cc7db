//! Matroid secretary algorithms: a 4-competitive procedure for the free
//! order model, two constant-competitive procedures for laminar matroids in
//! the random-order model, and exact enumeration oracles that check their
//! guarantees on small instances.
//!
//! Instances are generic over the weight scalar; see [`Weight`].

pub mod algorithm;
pub mod error;
pub mod exact;
pub mod free_order;
pub mod harness;
pub mod instance;
pub mod laminar;
pub mod matroid;
pub mod secretary;
pub mod weight;

pub use algorithm::Algorithm;
pub use error::{InstanceError, MatroidError};
pub use instance::{validate_instance, Instance, RawInstance};
pub use matroid::{Matroid, MatroidSpec};
pub use weight::{ElementId, Weight};

/// Instance with double-precision weights; the type used by the harness.
pub type InstanceF64 = Instance<f64>;
/// Instance with single-precision weights.
pub type InstanceF32 = Instance<f32>;
/// Instance with exact rational weights.
pub type RationalInstance = Instance<num_rational::Ratio<i64>>;
