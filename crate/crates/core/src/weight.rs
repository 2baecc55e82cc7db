//! Scalar weights and element identifiers.

use std::fmt;
use std::ops::Add;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Scalar type usable as an element weight.
///
/// The algorithms only ever compare weights, so anything totally ordered on
/// the values actually used (floats without NaN, integers, rationals) works.
/// Expectations and reports are accumulated in `f64` via [`ToPrimitive`].
pub trait Weight:
    Copy + PartialOrd + Zero + Add<Output = Self> + ToPrimitive + fmt::Debug + Send + Sync + 'static
{
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Weight for T where
    T: Copy
        + PartialOrd
        + Zero
        + Add<Output = T>
        + ToPrimitive
        + fmt::Debug
        + Send
        + Sync
        + 'static
{
}

/// Index of an element of the ground set, in `[0, n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for ElementId {
    fn from(index: usize) -> Self {
        ElementId::new(index)
    }
}

/// Shorthand for building id lists in tests and examples.
pub fn ids(indices: &[usize]) -> Vec<ElementId> {
    indices.iter().map(|&i| ElementId::new(i)).collect()
}
