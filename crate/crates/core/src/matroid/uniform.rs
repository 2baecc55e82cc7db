use super::{own_position_layers, IndependenceTracker, Matroid};
use crate::weight::ElementId;

/// `U(k, n)`: every set of at most `k` elements is independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMatroid {
    n: usize,
    rank: usize,
}

impl UniformMatroid {
    pub fn new(n: usize, rank: usize) -> Self {
        UniformMatroid { n, rank }
    }

    pub fn full_rank(&self) -> usize {
        self.rank
    }
}

pub struct UniformTracker {
    rank: usize,
    len: usize,
}

impl IndependenceTracker for UniformTracker {
    fn can_add(&mut self, _e: ElementId) -> bool {
        self.len < self.rank
    }

    fn try_add(&mut self, e: ElementId) -> bool {
        let ok = self.can_add(e);
        self.len += ok as usize;
        ok
    }

    fn len(&self) -> usize {
        self.len
    }
}

impl Matroid for UniformMatroid {
    type Tracker<'a> = UniformTracker;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn independent_unchecked(&self, set: &[ElementId]) -> bool {
        set.len() <= self.rank
    }

    fn rank_unchecked(&self, set: &[ElementId]) -> usize {
        set.len().min(self.rank)
    }

    fn tracker(&self) -> UniformTracker {
        UniformTracker {
            rank: self.rank,
            len: 0,
        }
    }

    fn span_layers(&self, order: &[ElementId]) -> Vec<Option<usize>> {
        let mut layer = own_position_layers(self.n, order);
        // Everything is spanned once `rank` elements have been seen.
        if !order.is_empty() && order.len() >= self.rank {
            let full = self.rank.saturating_sub(1);
            for l in layer.iter_mut() {
                *l = Some(l.map_or(full, |x| x.min(full)));
            }
        }
        layer
    }
}
