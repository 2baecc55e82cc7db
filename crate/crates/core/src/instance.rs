//! Problem instances: weights, the tie-broken weight order, and validation of
//! raw JSON descriptions.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::InstanceError;
use crate::matroid::{
    GraphicMatroid, IndependenceTracker, LaminarTree, Matroid, MatroidSpec, PartitionMatroid,
    UniformMatroid,
};
use crate::weight::{ElementId, Weight};

/// A weighted matroid. Elements are compared by weight descending, then id
/// ascending, which makes the order strict even with equal weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<W> {
    weights: Vec<W>,
    matroid: MatroidSpec,
    order: Vec<ElementId>,
    position: Vec<u32>,
    original_ids: Vec<usize>,
}

impl<W: Weight> Instance<W> {
    pub fn new(weights: Vec<W>, matroid: MatroidSpec) -> Result<Self, InstanceError> {
        let n = matroid.ground_size();
        if weights.len() != n {
            return Err(InstanceError::WeightCount {
                expected: n,
                found: weights.len(),
            });
        }
        for (id, w) in weights.iter().enumerate() {
            match w.partial_cmp(&W::zero()) {
                None => return Err(InstanceError::NonFiniteWeight { id }),
                Some(Ordering::Less) => return Err(InstanceError::NegativeWeight { id }),
                _ => {}
            }
        }
        let mut order: Vec<ElementId> = (0..n).map(ElementId::new).collect();
        order.sort_by(|&a, &b| {
            weights[b.index()]
                .partial_cmp(&weights[a.index()])
                .expect("weights are comparable")
                .then(a.cmp(&b))
        });
        let mut position = vec![0u32; n];
        for (p, e) in order.iter().enumerate() {
            position[e.index()] = p as u32;
        }
        Ok(Instance {
            weights,
            matroid,
            order,
            position,
            original_ids: (0..n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn weight(&self, e: ElementId) -> W {
        self.weights[e.index()]
    }

    pub fn matroid(&self) -> &MatroidSpec {
        &self.matroid
    }

    pub fn laminar(&self) -> Option<&LaminarTree> {
        self.matroid.as_laminar()
    }

    /// `e_1, …, e_n`: all elements, heaviest first.
    pub fn weight_order(&self) -> &[ElementId] {
        &self.order
    }

    /// Zero-based index of `e` in [`weight_order`](Self::weight_order).
    pub fn position(&self, e: ElementId) -> usize {
        self.position[e.index()] as usize
    }

    /// Comparison key: larger is better.
    pub fn priority(&self, e: ElementId) -> u32 {
        (self.n() - self.position(e)) as u32
    }

    /// Whether `a` is strictly better than `b` under the tie-broken order.
    pub fn beats(&self, a: ElementId, b: ElementId) -> bool {
        self.position[a.index()] < self.position[b.index()]
    }

    /// Original id of each element before zero-capacity sets were removed.
    pub fn original_ids(&self) -> &[usize] {
        &self.original_ids
    }

    pub fn total_weight(&self, set: &[ElementId]) -> W {
        set.iter()
            .fold(W::zero(), |acc, &e| acc + self.weights[e.index()])
    }

    pub fn total_weight_f64(&self, set: &[ElementId]) -> f64 {
        set.iter().map(|&e| self.weights[e.index()].as_f64()).sum()
    }

    /// The maximum-weight independent subset of `restrict`, unique under the
    /// tie-broken order, listed best first.
    pub fn greedy_max_weight(&self, restrict: &[ElementId]) -> Vec<ElementId> {
        let mut sorted = restrict.to_vec();
        sorted.sort_unstable_by_key(|&e| self.position[e.index()]);
        let mut tracker = self.matroid.tracker();
        sorted.retain(|&e| tracker.try_add(e));
        sorted
    }

    /// [`greedy_max_weight`](Self::greedy_max_weight) over the elements
    /// flagged in `mask`, in O(n) scans of the weight order.
    pub fn greedy_in_mask(&self, mask: &[bool]) -> Vec<ElementId> {
        let mut tracker = self.matroid.tracker();
        self.order
            .iter()
            .copied()
            .filter(|&e| mask[e.index()] && tracker.try_add(e))
            .collect()
    }

    /// The offline optimum.
    pub fn opt(&self) -> Vec<ElementId> {
        let mut tracker = self.matroid.tracker();
        self.order
            .iter()
            .copied()
            .filter(|&e| tracker.try_add(e))
            .collect()
    }
}

fn default_capacity() -> usize {
    1
}

/// Raw JSON instance description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawInstance<W> {
    pub n: usize,
    pub weights: Vec<W>,
    pub matroid: RawMatroid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RawMatroid {
    Uniform {
        #[serde(alias = "k")]
        rank: usize,
    },
    Partition {
        parts: Vec<RawPart>,
    },
    Graphic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<usize>,
        edges: Vec<[usize; 2]>,
    },
    Laminar {
        sets: Vec<RawLaminarSet>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        root_capacity: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPart {
    pub members: Vec<usize>,
    #[serde(default = "default_capacity")]
    pub capacity: usize,
}

/// A laminar set given by its own members, its child sets, or both. The set
/// is the union of its members and its children's sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLaminarSet {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<RawLaminarSet>,
    pub capacity: usize,
}

impl RawLaminarSet {
    pub fn leaf(members: Vec<usize>, capacity: usize) -> Self {
        RawLaminarSet {
            members,
            children: Vec::new(),
            capacity,
        }
    }

    /// Appends `(all members, capacity)` for this set and its descendants.
    fn flatten_into(&self, out: &mut Vec<(Vec<usize>, usize)>) -> Vec<usize> {
        let mut all = self.members.clone();
        for child in &self.children {
            all.extend(child.flatten_into(out));
        }
        out.push((all.clone(), self.capacity));
        all
    }
}

/// Flattens a possibly nested family into `(members, capacity)` pairs.
pub fn flatten_family(sets: &[RawLaminarSet]) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for s in sets {
        s.flatten_into(&mut out);
    }
    out
}

/// Checks a raw description and builds the instance.
///
/// Laminar families are checked for crossing sets first; sets with capacity
/// zero then have all their elements deleted, the survivors are renumbered in
/// id order, and the mapping is kept in [`Instance::original_ids`]. A missing
/// ground-set constraint is added with capacity `n`.
pub fn validate_instance<W: Weight>(raw: RawInstance<W>) -> Result<Instance<W>, InstanceError> {
    let n = raw.n;
    if raw.weights.len() != n {
        return Err(InstanceError::WeightCount {
            expected: n,
            found: raw.weights.len(),
        });
    }
    let matroid = match raw.matroid {
        RawMatroid::Uniform { rank } => {
            if rank == 0 && n > 0 {
                return Err(InstanceError::ZeroCapacity {
                    what: "uniform matroid".into(),
                });
            }
            MatroidSpec::Uniform(UniformMatroid::new(n, rank))
        }
        RawMatroid::Partition { parts } => MatroidSpec::Partition(PartitionMatroid::new(
            n,
            parts.into_iter().map(|p| (p.members, p.capacity)).collect(),
        )?),
        RawMatroid::Graphic { vertices, edges } => {
            if edges.len() != n {
                return Err(InstanceError::Invalid(format!(
                    "graphic instance has {} edges but n = {n}",
                    edges.len()
                )));
            }
            let vertices = vertices
                .unwrap_or_else(|| edges.iter().flatten().map(|&v| v + 1).max().unwrap_or(0));
            MatroidSpec::Graphic(GraphicMatroid::new(
                vertices,
                edges.into_iter().map(|[u, v]| (u, v)).collect(),
            )?)
        }
        RawMatroid::Laminar {
            sets,
            root_capacity,
        } => {
            let family = flatten_family(&sets);
            // Laminarity is a property of the family as given.
            LaminarTree::from_family(
                n,
                family
                    .iter()
                    .map(|(m, c)| (m.clone(), (*c).max(1)))
                    .collect(),
                root_capacity,
            )?;
            let mut removed = vec![false; n];
            for (members, cap) in &family {
                if *cap == 0 {
                    members.iter().for_each(|&e| removed[e] = true);
                }
            }
            if removed.iter().any(|&r| r) {
                return remove_zero_capacity(raw.weights, family, root_capacity, &removed);
            }
            MatroidSpec::Laminar(LaminarTree::from_family(n, family, root_capacity)?)
        }
    };
    Instance::new(raw.weights, matroid)
}

fn remove_zero_capacity<W: Weight>(
    weights: Vec<W>,
    family: Vec<(Vec<usize>, usize)>,
    root_capacity: Option<usize>,
    removed: &[bool],
) -> Result<Instance<W>, InstanceError> {
    let kept: Vec<usize> = (0..removed.len()).filter(|&e| !removed[e]).collect();
    let mut new_id = vec![usize::MAX; removed.len()];
    for (i, &e) in kept.iter().enumerate() {
        new_id[e] = i;
    }
    let family: Vec<(Vec<usize>, usize)> = family
        .into_iter()
        .filter(|(_, cap)| *cap > 0)
        .map(|(members, cap)| {
            let members: Vec<usize> = members
                .into_iter()
                .filter(|&e| !removed[e])
                .map(|e| new_id[e])
                .collect();
            (members, cap)
        })
        .collect();
    let tree =
        LaminarTree::from_family(kept.len(), family, root_capacity.map(|c| c.min(kept.len())))?;
    let weights = kept.iter().map(|&e| weights[e]).collect();
    let mut instance = Instance::new(weights, MatroidSpec::Laminar(tree))?;
    instance.original_ids = kept;
    Ok(instance)
}

/// Parses and validates a JSON instance with `f64` weights.
pub fn instance_from_json(text: &str) -> Result<Instance<f64>, InstanceError> {
    let raw: RawInstance<f64> =
        serde_json::from_str(text).map_err(|e| InstanceError::Invalid(e.to_string()))?;
    validate_instance(raw)
}
