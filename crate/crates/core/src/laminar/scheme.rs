//! Partitions of the ground set used to reduce a laminar matroid to a
//! unitary partition matroid.

use serde::{Deserialize, Serialize};

use super::{ConsecutiveOrder, LaminarError};
use crate::matroid::{LaminarTree, Matroid};
use crate::weight::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Odd,
    Even,
    Interval,
    Whole,
}

/// Disjoint parts, each listed in numbering order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionScheme {
    pub kind: SchemeKind,
    pub parts: Vec<Vec<ElementId>>,
    /// For interval schemes, the element of the independent set each part
    /// was built around.
    pub anchors: Vec<Option<ElementId>>,
}

impl PartitionScheme {
    fn unanchored(kind: SchemeKind, parts: Vec<Vec<ElementId>>) -> Self {
        let anchors = vec![None; parts.len()];
        PartitionScheme {
            kind,
            parts,
            anchors,
        }
    }

    /// The single part `N \ A`.
    pub fn whole(order: &ConsecutiveOrder, in_sample: &[bool]) -> Self {
        let part: Vec<ElementId> = order
            .elements()
            .iter()
            .copied()
            .filter(|e| !in_sample[e.index()])
            .collect();
        let parts = if part.is_empty() { vec![] } else { vec![part] };
        PartitionScheme::unanchored(SchemeKind::Whole, parts)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Removes sampled elements and drops parts that become empty.
    pub fn without_sample(mut self, in_sample: &[bool]) -> Self {
        let mut anchors = Vec::with_capacity(self.parts.len());
        let mut parts = Vec::with_capacity(self.parts.len());
        for (mut part, anchor) in self.parts.into_iter().zip(self.anchors) {
            part.retain(|e| !in_sample[e.index()]);
            if !part.is_empty() {
                parts.push(part);
                anchors.push(anchor);
            }
        }
        self.parts = parts;
        self.anchors = anchors;
        self
    }

    /// Part index of every element, `None` for elements in no part.
    pub fn part_lookup(&self, n: usize) -> Vec<Option<u32>> {
        let mut lookup = vec![None; n];
        for (p, part) in self.parts.iter().enumerate() {
            for e in part {
                lookup[e.index()] = Some(p as u32);
            }
        }
        lookup
    }
}

/// The odd- and even-indexed gap families around the sample optimum.
///
/// With `OPT_A = {f_{i_1}, …, f_{i_p}}` (one-based, increasing) and
/// `i_0 = 0`, `i_{p+1} = n`, part `P_j` is `{f_k : i_{j-1} ≤ k ≤ i_j} \ A`.
/// Empty parts are dropped after the parity split.
pub fn odd_even_parts(
    order: &ConsecutiveOrder,
    in_sample: &[bool],
    opt_sample: &[ElementId],
) -> Result<(PartitionScheme, PartitionScheme), LaminarError> {
    if opt_sample.is_empty() {
        return Err(LaminarError::EmptySampleOptimum);
    }
    let n = order.len();
    let mut cuts: Vec<usize> = opt_sample.iter().map(|&e| order.index1(e)).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(n);
    let (mut odd, mut even) = (Vec::new(), Vec::new());
    for j in 1..cuts.len() {
        let part: Vec<ElementId> = (cuts[j - 1].max(1)..=cuts[j])
            .map(|k| order.element_at(k - 1))
            .filter(|e| !in_sample[e.index()])
            .collect();
        if part.is_empty() {
            continue;
        }
        if j % 2 == 1 {
            odd.push(part);
        } else {
            even.push(part);
        }
    }
    Ok((
        PartitionScheme::unanchored(SchemeKind::Odd, odd),
        PartitionScheme::unanchored(SchemeKind::Even, even),
    ))
}

/// The interval partition of `N` around an independent set `I`.
///
/// Element `f_i` joins the part of `f_j ∈ I`, where `L` is the smallest set
/// of the family containing `f_i` and meeting `I`, and `j` is the largest
/// index `≤ i` in `L ∩ I`, or failing that the smallest index `> i`. An empty
/// `I` yields the single part `N`.
pub fn interval_partition(
    tree: &LaminarTree,
    order: &ConsecutiveOrder,
    independent: &[ElementId],
) -> Result<PartitionScheme, LaminarError> {
    if !tree.is_independent(independent)? {
        return Err(LaminarError::Dependent);
    }
    let n = order.len();
    if independent.is_empty() {
        return Ok(PartitionScheme::unanchored(
            SchemeKind::Whole,
            if n == 0 {
                vec![]
            } else {
                vec![order.elements().to_vec()]
            },
        ));
    }

    // Smallest set meeting I above each node: counts are monotone towards the
    // root, so it is the node itself when it meets I, else its parent's answer.
    let counts = tree.subtree_counts(independent);
    let mut meeting = vec![0usize; tree.num_nodes()];
    for v in 0..tree.num_nodes() {
        meeting[v] = match tree.node(v).parent {
            Some(p) if counts[v] == 0 => meeting[p],
            _ => v,
        };
    }

    let mut anchors: Vec<usize> = independent.iter().map(|&e| order.position(e)).collect();
    anchors.sort_unstable();
    let mut parts: Vec<Vec<ElementId>> = vec![Vec::new(); anchors.len()];
    for (i, &f) in order.elements().iter().enumerate() {
        let range = order.node_range(meeting[tree.leaf_of(f)]);
        let after = anchors.partition_point(|&p| p <= i);
        let slot = if after > 0 && anchors[after - 1] >= range.start {
            after - 1
        } else {
            debug_assert!(after < anchors.len() && anchors[after] < range.end);
            after
        };
        parts[slot].push(f);
    }
    Ok(PartitionScheme {
        kind: SchemeKind::Interval,
        anchors: anchors.iter().map(|&p| Some(order.element_at(p))).collect(),
        parts,
    })
}
