use std::ops::Range;

use crate::matroid::{LaminarTree, NodeId};
use crate::weight::ElementId;

/// A numbering `f_1, …, f_n` of the ground set under which every set of the
/// laminar family is an interval. Positions are stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsecutiveOrder {
    element_at: Vec<ElementId>,
    position: Vec<u32>,
    node_range: Vec<Range<usize>>,
}

impl ConsecutiveOrder {
    pub fn len(&self) -> usize {
        self.element_at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.element_at.is_empty()
    }

    /// Elements in numbering order.
    pub fn elements(&self) -> &[ElementId] {
        &self.element_at
    }

    pub fn element_at(&self, position: usize) -> ElementId {
        self.element_at[position]
    }

    pub fn position(&self, e: ElementId) -> usize {
        self.position[e.index()] as usize
    }

    /// One-based index of `e`, matching `f_i` numbering.
    pub fn index1(&self, e: ElementId) -> usize {
        self.position(e) + 1
    }

    /// Positions occupied by the set `node`.
    pub fn node_range(&self, node: NodeId) -> Range<usize> {
        self.node_range[node].clone()
    }
}

/// Depth-first layout: each node's own members first (ascending id), then
/// its children's blocks in child order.
pub fn consecutive_order(tree: &LaminarTree) -> ConsecutiveOrder {
    let n = tree.elements_of(tree.root()).len();
    let mut element_at = Vec::with_capacity(n);
    let mut node_range = vec![0..0; tree.num_nodes()];
    // (node, children already pushed)
    let mut stack: Vec<(NodeId, bool)> = vec![(tree.root(), false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            node_range[v].end = element_at.len();
            continue;
        }
        node_range[v].start = element_at.len();
        let mut members = tree.node(v).members.clone();
        members.sort_unstable();
        element_at.extend(members);
        stack.push((v, true));
        for &c in tree.node(v).children.iter().rev() {
            stack.push((c, false));
        }
    }
    let mut position = vec![0u32; element_at.len()];
    for (p, e) in element_at.iter().enumerate() {
        position[e.index()] = p as u32;
    }
    ConsecutiveOrder {
        element_at,
        position,
        node_range,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_consecutive(tree: &LaminarTree, order: &ConsecutiveOrder) {
        for v in 0..tree.num_nodes() {
            let members = tree.elements_of(v);
            let positions: Vec<usize> = members.iter().map(|&e| order.position(e)).collect();
            let lo = *positions.iter().min().unwrap_or(&0);
            let hi = positions.iter().max().map_or(0, |h| h + 1);
            assert_eq!(hi - lo, members.len(), "node {v} is not contiguous");
            if !members.is_empty() {
                assert_eq!(order.node_range(v), lo..hi);
            }
        }
    }

    #[test]
    fn flat_family_is_identity() {
        let tree = LaminarTree::flat(5, 2);
        let order = consecutive_order(&tree);
        let ident: Vec<ElementId> = (0..5).map(ElementId::new).collect();
        assert_eq!(order.elements(), &ident[..]);
    }

    #[test]
    fn nested_family_is_contiguous() {
        // L1 ⊂ L2 and a disjoint L3, with members scattered over the id range.
        let tree = LaminarTree::from_family(
            9,
            vec![(vec![1, 7], 1), (vec![1, 4, 7, 8], 2), (vec![0, 5, 3], 2)],
            Some(3),
        )
        .unwrap();
        let order = consecutive_order(&tree);
        assert_consecutive(&tree, &order);
    }
}
