//! Independence, rank and span oracles for the supported matroid classes.
//!
//! Every matroid exposes two layers: checked set queries (`is_independent`,
//! `rank`, `span`) that validate their input, and an incremental
//! [`IndependenceTracker`] used on the hot paths of the online algorithms.

mod graphic;
mod laminar;
mod partition;
mod uniform;
mod union_find;

pub use graphic::GraphicMatroid;
pub use laminar::{LaminarNode, LaminarTree, NodeId};
pub use partition::PartitionMatroid;
pub use uniform::UniformMatroid;
pub use union_find::{TimedForest, UnionFind};

use crate::error::MatroidError;
use crate::weight::ElementId;

/// Incrementally grown independent set.
pub trait IndependenceTracker {
    /// Whether the current set plus `e` is independent. `e` must not already
    /// be in the set.
    fn can_add(&mut self, e: ElementId) -> bool;

    /// Adds `e` if that keeps the set independent; returns whether it was added.
    fn try_add(&mut self, e: ElementId) -> bool;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub trait Matroid {
    type Tracker<'a>: IndependenceTracker
    where
        Self: 'a;

    fn ground_size(&self) -> usize;

    /// Independence test without input validation.
    fn independent_unchecked(&self, set: &[ElementId]) -> bool;

    /// Rank without input validation.
    fn rank_unchecked(&self, set: &[ElementId]) -> usize;

    /// An empty independent set ready to grow.
    fn tracker(&self) -> Self::Tracker<'_>;

    /// For each ground element `f`, the smallest index `i` such that
    /// `f ∈ span(order[..=i])`, or `None` when `f ∉ span(order)`.
    fn span_layers(&self, order: &[ElementId]) -> Vec<Option<usize>> {
        span_layers_incremental(self, order)
    }

    fn is_independent(&self, set: &[ElementId]) -> Result<bool, MatroidError> {
        check_set(self.ground_size(), set)?;
        Ok(self.independent_unchecked(set))
    }

    fn rank(&self, set: &[ElementId]) -> Result<usize, MatroidError> {
        check_set(self.ground_size(), set)?;
        Ok(self.rank_unchecked(set))
    }

    /// Closure of `set`: every element whose addition keeps the rank unchanged.
    fn span(&self, set: &[ElementId]) -> Result<Vec<ElementId>, MatroidError> {
        check_set(self.ground_size(), set)?;
        let n = self.ground_size();
        let mut member = vec![false; n];
        let mut tracker = self.tracker();
        for &e in set {
            member[e.index()] = true;
            tracker.try_add(e);
        }
        Ok((0..n)
            .map(ElementId::new)
            .filter(|&f| member[f.index()] || !tracker.can_add(f))
            .collect())
    }
}

/// Rejects out-of-range and repeated ids.
pub fn check_set(n: usize, set: &[ElementId]) -> Result<(), MatroidError> {
    if let Some(&id) = set.iter().find(|e| e.index() >= n) {
        return Err(MatroidError::ElementOutOfRange { id, n });
    }
    if set.len() > 1 {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(MatroidError::DuplicateElement(w[0]));
        }
    }
    Ok(())
}

/// Rank computed greedily through the independence oracle alone.
///
/// Correct for any matroid by the exchange property; quadratic in `|set|`
/// oracle calls, so only meant for cross-checks.
pub fn rank_by_greedy<M: Matroid + ?Sized>(m: &M, set: &[ElementId]) -> usize {
    let mut basis: Vec<ElementId> = Vec::new();
    for &e in set {
        basis.push(e);
        if !m.independent_unchecked(&basis) {
            basis.pop();
        }
    }
    basis.len()
}

/// Generic span layering: grows a greedy basis along `order` and rescans the
/// unspanned elements after every basis extension.
pub fn span_layers_incremental<M: Matroid + ?Sized>(
    m: &M,
    order: &[ElementId],
) -> Vec<Option<usize>> {
    let n = m.ground_size();
    let mut layer = vec![None; n];
    let mut tracker = m.tracker();
    for (i, &a) in order.iter().enumerate() {
        if layer[a.index()].is_none() {
            layer[a.index()] = Some(i);
        }
        if tracker.try_add(a) {
            for (f, slot) in layer.iter_mut().enumerate() {
                if slot.is_none() && !tracker.can_add(ElementId::new(f)) {
                    *slot = Some(i);
                }
            }
        }
    }
    layer
}

/// Any of the four supported matroid classes.
#[derive(Debug, Clone, PartialEq)]
pub enum MatroidSpec {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Graphic(GraphicMatroid),
    Laminar(LaminarTree),
}

impl MatroidSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MatroidSpec::Uniform(_) => "uniform",
            MatroidSpec::Partition(_) => "partition",
            MatroidSpec::Graphic(_) => "graphic",
            MatroidSpec::Laminar(_) => "laminar",
        }
    }

    pub fn as_laminar(&self) -> Option<&LaminarTree> {
        match self {
            MatroidSpec::Laminar(t) => Some(t),
            _ => None,
        }
    }
}

pub enum AnyTracker<'a> {
    Uniform(<UniformMatroid as Matroid>::Tracker<'a>),
    Partition(<PartitionMatroid as Matroid>::Tracker<'a>),
    Graphic(<GraphicMatroid as Matroid>::Tracker<'a>),
    Laminar(<LaminarTree as Matroid>::Tracker<'a>),
}

macro_rules! dispatch {
    ($value:expr, $inner:ident => $body:expr) => {
        match $value {
            MatroidSpec::Uniform($inner) => $body,
            MatroidSpec::Partition($inner) => $body,
            MatroidSpec::Graphic($inner) => $body,
            MatroidSpec::Laminar($inner) => $body,
        }
    };
}

impl IndependenceTracker for AnyTracker<'_> {
    fn can_add(&mut self, e: ElementId) -> bool {
        match self {
            AnyTracker::Uniform(t) => t.can_add(e),
            AnyTracker::Partition(t) => t.can_add(e),
            AnyTracker::Graphic(t) => t.can_add(e),
            AnyTracker::Laminar(t) => t.can_add(e),
        }
    }

    fn try_add(&mut self, e: ElementId) -> bool {
        match self {
            AnyTracker::Uniform(t) => t.try_add(e),
            AnyTracker::Partition(t) => t.try_add(e),
            AnyTracker::Graphic(t) => t.try_add(e),
            AnyTracker::Laminar(t) => t.try_add(e),
        }
    }

    fn len(&self) -> usize {
        match self {
            AnyTracker::Uniform(t) => t.len(),
            AnyTracker::Partition(t) => t.len(),
            AnyTracker::Graphic(t) => t.len(),
            AnyTracker::Laminar(t) => t.len(),
        }
    }
}

impl Matroid for MatroidSpec {
    type Tracker<'a> = AnyTracker<'a>;

    fn ground_size(&self) -> usize {
        dispatch!(self, m => m.ground_size())
    }

    fn independent_unchecked(&self, set: &[ElementId]) -> bool {
        dispatch!(self, m => m.independent_unchecked(set))
    }

    fn rank_unchecked(&self, set: &[ElementId]) -> usize {
        dispatch!(self, m => m.rank_unchecked(set))
    }

    fn tracker(&self) -> AnyTracker<'_> {
        match self {
            MatroidSpec::Uniform(m) => AnyTracker::Uniform(m.tracker()),
            MatroidSpec::Partition(m) => AnyTracker::Partition(m.tracker()),
            MatroidSpec::Graphic(m) => AnyTracker::Graphic(m.tracker()),
            MatroidSpec::Laminar(m) => AnyTracker::Laminar(m.tracker()),
        }
    }

    fn span_layers(&self, order: &[ElementId]) -> Vec<Option<usize>> {
        dispatch!(self, m => m.span_layers(order))
    }
}

/// Each element of `order` is spanned no later than its own position.
pub(crate) fn own_position_layers(n: usize, order: &[ElementId]) -> Vec<Option<usize>> {
    let mut layer = vec![None; n];
    for (i, &a) in order.iter().enumerate() {
        if layer[a.index()].is_none() {
            layer[a.index()] = Some(i);
        }
    }
    layer
}

pub(crate) fn min_layer(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}
