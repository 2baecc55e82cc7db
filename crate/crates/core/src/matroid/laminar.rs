use super::{min_layer, own_position_layers, IndependenceTracker, Matroid};
use crate::error::InstanceError;
use crate::weight::ElementId;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarNode {
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Elements whose smallest enclosing set is this node.
    pub members: Vec<ElementId>,
    pub capacity: usize,
    /// Number of elements in the whole subtree.
    pub size: usize,
    pub depth: usize,
}

/// A laminar family stored as a rooted tree. Node 0 is the ground set and
/// every parent has a smaller index than its children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarTree {
    n: usize,
    nodes: Vec<LaminarNode>,
    leaf: Vec<u32>,
}

impl LaminarTree {
    /// The trivial family `{N}` with the given capacity.
    pub fn flat(n: usize, capacity: usize) -> Self {
        LaminarTree::from_family(n, Vec::new(), Some(capacity)).expect("flat family is laminar")
    }

    /// Builds the tree of a family of `(members, capacity)` sets.
    ///
    /// Sets are inserted largest first; a set is laminar with everything
    /// inserted so far exactly when all its members currently sit in the same
    /// smallest enclosing set. The ground set is added with capacity
    /// `root_capacity` (default `n`) unless the family already contains it, in
    /// which case the smaller capacity wins.
    pub fn from_family(
        n: usize,
        sets: Vec<(Vec<usize>, usize)>,
        root_capacity: Option<usize>,
    ) -> Result<Self, InstanceError> {
        let mut family: Vec<(Vec<ElementId>, usize)> = Vec::with_capacity(sets.len());
        for (k, (members, cap)) in sets.into_iter().enumerate() {
            if cap == 0 {
                return Err(InstanceError::ZeroCapacity {
                    what: format!("laminar set {k}"),
                });
            }
            let mut seen = std::collections::HashSet::with_capacity(members.len());
            for &id in &members {
                if id >= n {
                    return Err(InstanceError::DanglingElement { id, n });
                }
                if !seen.insert(id) {
                    return Err(InstanceError::DuplicateMember { id });
                }
            }
            if !members.is_empty() {
                let mut members: Vec<ElementId> = members.into_iter().map(ElementId::new).collect();
                members.sort_unstable();
                family.push((members, cap));
            }
        }
        family.sort_by_key(|s| std::cmp::Reverse(s.0.len()));

        let mut root_cap = root_capacity.unwrap_or(n).max(1);
        let mut nodes = vec![LaminarNode {
            parent: None,
            children: Vec::new(),
            members: Vec::new(),
            capacity: 0,
            size: n,
            depth: 0,
        }];
        let mut node_sets: Vec<Vec<ElementId>> = vec![(0..n).map(ElementId::new).collect()];
        let mut cur = vec![0u32; n];

        for (members, cap) in family {
            if members.len() == n {
                root_cap = root_cap.min(cap);
                continue;
            }
            let parent = cur[members[0].index()] as usize;
            if let Some(&bad) = members.iter().find(|e| cur[e.index()] as usize != parent) {
                let other = cur[bad.index()] as usize;
                // Whichever of the two enclosing sets is deeper crosses `members`.
                let culprit = if nodes[other].depth >= nodes[parent].depth {
                    other
                } else {
                    parent
                };
                return Err(InstanceError::CrossingSets {
                    first: node_sets[culprit].clone(),
                    second: members,
                });
            }
            let id = nodes.len();
            nodes.push(LaminarNode {
                parent: Some(parent),
                children: Vec::new(),
                members: Vec::new(),
                capacity: cap,
                size: members.len(),
                depth: nodes[parent].depth + 1,
            });
            nodes[parent].children.push(id);
            for e in &members {
                cur[e.index()] = id as u32;
            }
            node_sets.push(members);
        }
        nodes[0].capacity = root_cap;
        for (e, &node) in cur.iter().enumerate() {
            nodes[node as usize].members.push(ElementId::new(e));
        }
        Ok(LaminarTree {
            n,
            nodes,
            leaf: cur,
        })
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn nodes(&self) -> &[LaminarNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &LaminarNode {
        &self.nodes[id]
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Smallest set of the family containing `e`.
    pub fn leaf_of(&self, e: ElementId) -> NodeId {
        self.leaf[e.index()] as usize
    }

    /// Sets containing `e`, smallest first.
    pub fn chain(&self, e: ElementId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(Some(self.leaf_of(e)), move |&v| self.nodes[v].parent)
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|v| v.depth).max().unwrap_or(0)
    }

    /// All elements of the set `node`, ascending.
    pub fn elements_of(&self, node: NodeId) -> Vec<ElementId> {
        let mut out = Vec::with_capacity(self.nodes[node].size);
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            out.extend_from_slice(&self.nodes[v].members);
            stack.extend_from_slice(&self.nodes[v].children);
        }
        out.sort_unstable();
        out
    }

    /// Number of elements of `set` inside each node's subtree.
    pub fn subtree_counts(&self, set: &[ElementId]) -> Vec<usize> {
        let mut counts = vec![0usize; self.nodes.len()];
        for &e in set {
            counts[self.leaf_of(e)] += 1;
        }
        for v in (1..self.nodes.len()).rev() {
            let p = self.nodes[v].parent.expect("non-root has a parent");
            counts[p] += counts[v];
        }
        counts
    }
}

pub struct LaminarTracker<'a> {
    tree: &'a LaminarTree,
    counts: Vec<u32>,
    len: usize,
}

impl LaminarTracker<'_> {
    fn fits(&self, e: ElementId) -> bool {
        self.tree
            .chain(e)
            .all(|v| (self.counts[v] as usize) < self.tree.nodes[v].capacity)
    }
}

impl IndependenceTracker for LaminarTracker<'_> {
    fn can_add(&mut self, e: ElementId) -> bool {
        self.fits(e)
    }

    fn try_add(&mut self, e: ElementId) -> bool {
        if !self.fits(e) {
            return false;
        }
        let tree = self.tree;
        for v in tree.chain(e) {
            self.counts[v] += 1;
        }
        self.len += 1;
        true
    }

    fn len(&self) -> usize {
        self.len
    }
}

impl Matroid for LaminarTree {
    type Tracker<'a> = LaminarTracker<'a>;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn independent_unchecked(&self, set: &[ElementId]) -> bool {
        self.subtree_counts(set)
            .iter()
            .zip(&self.nodes)
            .all(|(&c, v)| c <= v.capacity)
    }

    fn rank_unchecked(&self, set: &[ElementId]) -> usize {
        // Truncated bottom-up counts: each set keeps at most its capacity.
        let mut r = vec![0usize; self.nodes.len()];
        for &e in set {
            r[self.leaf_of(e)] += 1;
        }
        for v in (0..self.nodes.len()).rev() {
            r[v] = r[v].min(self.nodes[v].capacity);
            if let Some(p) = self.nodes[v].parent {
                r[p] += r[v];
            }
        }
        r.first().copied().unwrap_or(0)
    }

    fn tracker(&self) -> LaminarTracker<'_> {
        LaminarTracker {
            tree: self,
            counts: vec![0; self.nodes.len()],
            len: 0,
        }
    }

    fn span_layers(&self, order: &[ElementId]) -> Vec<Option<usize>> {
        // A set saturates when its count reaches capacity; from then on it
        // spans all of its elements.
        let mut tracker = self.tracker();
        let mut full_at: Vec<Option<usize>> = vec![None; self.nodes.len()];
        for (i, &a) in order.iter().enumerate() {
            if tracker.try_add(a) {
                for v in self.chain(a) {
                    if full_at[v].is_none() && tracker.counts[v] as usize == self.nodes[v].capacity
                    {
                        full_at[v] = Some(i);
                    }
                }
            }
        }
        for v in 1..self.nodes.len() {
            let p = self.nodes[v].parent.expect("non-root has a parent");
            full_at[v] = min_layer(full_at[v], full_at[p]);
        }
        let mut layer = own_position_layers(self.n, order);
        for (e, l) in layer.iter_mut().enumerate() {
            *l = min_layer(*l, full_at[self.leaf[e] as usize]);
        }
        layer
    }
}
