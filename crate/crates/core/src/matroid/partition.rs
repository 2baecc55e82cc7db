use super::{min_layer, own_position_layers, IndependenceTracker, Matroid};
use crate::error::InstanceError;
use crate::weight::ElementId;

/// Disjoint parts with per-part capacities. Elements outside every part are
/// unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    n: usize,
    part_of: Vec<Option<u32>>,
    capacities: Vec<usize>,
}

impl PartitionMatroid {
    pub fn new(n: usize, parts: Vec<(Vec<usize>, usize)>) -> Result<Self, InstanceError> {
        let mut part_of = vec![None; n];
        let mut capacities = Vec::with_capacity(parts.len());
        for (p, (members, cap)) in parts.into_iter().enumerate() {
            if cap == 0 {
                return Err(InstanceError::ZeroCapacity {
                    what: format!("partition part {p}"),
                });
            }
            for id in members {
                if id >= n {
                    return Err(InstanceError::DanglingElement { id, n });
                }
                if part_of[id].is_some() {
                    return Err(InstanceError::OverlappingParts { id });
                }
                part_of[id] = Some(p as u32);
            }
            capacities.push(cap);
        }
        Ok(PartitionMatroid {
            n,
            part_of,
            capacities,
        })
    }

    pub fn num_parts(&self) -> usize {
        self.capacities.len()
    }

    pub fn part_of(&self, e: ElementId) -> Option<usize> {
        self.part_of[e.index()].map(|p| p as usize)
    }

    pub fn capacity(&self, part: usize) -> usize {
        self.capacities[part]
    }

    fn counts(&self, set: &[ElementId]) -> Vec<usize> {
        let mut counts = vec![0; self.capacities.len()];
        for &e in set {
            if let Some(p) = self.part_of[e.index()] {
                counts[p as usize] += 1;
            }
        }
        counts
    }
}

pub struct PartitionTracker<'a> {
    m: &'a PartitionMatroid,
    counts: Vec<usize>,
    len: usize,
}

impl IndependenceTracker for PartitionTracker<'_> {
    fn can_add(&mut self, e: ElementId) -> bool {
        match self.m.part_of[e.index()] {
            Some(p) => self.counts[p as usize] < self.m.capacities[p as usize],
            None => true,
        }
    }

    fn try_add(&mut self, e: ElementId) -> bool {
        if !self.can_add(e) {
            return false;
        }
        if let Some(p) = self.m.part_of[e.index()] {
            self.counts[p as usize] += 1;
        }
        self.len += 1;
        true
    }

    fn len(&self) -> usize {
        self.len
    }
}

impl Matroid for PartitionMatroid {
    type Tracker<'a> = PartitionTracker<'a>;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn independent_unchecked(&self, set: &[ElementId]) -> bool {
        self.counts(set)
            .iter()
            .zip(&self.capacities)
            .all(|(c, cap)| c <= cap)
    }

    fn rank_unchecked(&self, set: &[ElementId]) -> usize {
        let free = set
            .iter()
            .filter(|e| self.part_of[e.index()].is_none())
            .count();
        free + self
            .counts(set)
            .iter()
            .zip(&self.capacities)
            .map(|(&c, &cap)| c.min(cap))
            .sum::<usize>()
    }

    fn tracker(&self) -> PartitionTracker<'_> {
        PartitionTracker {
            m: self,
            counts: vec![0; self.capacities.len()],
            len: 0,
        }
    }

    fn span_layers(&self, order: &[ElementId]) -> Vec<Option<usize>> {
        let mut counts = vec![0; self.capacities.len()];
        let mut full_at = vec![None; self.capacities.len()];
        for (i, &a) in order.iter().enumerate() {
            if let Some(p) = self.part_of[a.index()] {
                let p = p as usize;
                counts[p] += 1;
                if counts[p] == self.capacities[p] {
                    full_at[p] = Some(i);
                }
            }
        }
        let mut layer = own_position_layers(self.n, order);
        for (e, l) in layer.iter_mut().enumerate() {
            if let Some(p) = self.part_of[e] {
                *l = min_layer(*l, full_at[p as usize]);
            }
        }
        layer
    }
}
