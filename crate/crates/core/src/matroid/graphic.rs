use super::{own_position_layers, IndependenceTracker, Matroid, TimedForest, UnionFind};
use crate::error::InstanceError;
use crate::weight::ElementId;

/// Cycle matroid of a multigraph: element `i` is edge `i`, and a set is
/// independent when its edges form a forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicMatroid {
    vertices: usize,
    edges: Vec<(u32, u32)>,
}

impl GraphicMatroid {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, InstanceError> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, (u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= vertices {
                    return Err(InstanceError::Invalid(format!(
                        "edge {i} uses vertex {x} but the graph has {vertices} vertices"
                    )));
                }
            }
            if u == v {
                return Err(InstanceError::SelfLoop { edge: i, vertex: u });
            }
            out.push((u as u32, v as u32));
        }
        Ok(GraphicMatroid {
            vertices,
            edges: out,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    fn endpoints(&self, e: ElementId) -> (usize, usize) {
        let (u, v) = self.edges[e.index()];
        (u as usize, v as usize)
    }
}

pub struct GraphicTracker<'a> {
    m: &'a GraphicMatroid,
    forest: UnionFind,
    len: usize,
}

impl IndependenceTracker for GraphicTracker<'_> {
    fn can_add(&mut self, e: ElementId) -> bool {
        let (u, v) = self.m.endpoints(e);
        !self.forest.connected(u, v)
    }

    fn try_add(&mut self, e: ElementId) -> bool {
        let (u, v) = self.m.endpoints(e);
        let added = self.forest.union(u, v);
        self.len += added as usize;
        added
    }

    fn len(&self) -> usize {
        self.len
    }
}

impl Matroid for GraphicMatroid {
    type Tracker<'a> = GraphicTracker<'a>;

    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn independent_unchecked(&self, set: &[ElementId]) -> bool {
        let mut t = self.tracker();
        set.iter().all(|&e| t.try_add(e))
    }

    fn rank_unchecked(&self, set: &[ElementId]) -> usize {
        let mut t = self.tracker();
        set.iter().filter(|&&e| t.try_add(e)).count()
    }

    fn tracker(&self) -> GraphicTracker<'_> {
        GraphicTracker {
            m: self,
            forest: UnionFind::new(self.vertices),
            len: 0,
        }
    }

    fn span_layers(&self, order: &[ElementId]) -> Vec<Option<usize>> {
        let mut forest = TimedForest::new(self.vertices);
        for (i, &a) in order.iter().enumerate() {
            let (u, v) = self.endpoints(a);
            forest.union(u, v, i);
        }
        let mut layer = own_position_layers(self.edges.len(), order);
        for (e, l) in layer.iter_mut().enumerate() {
            let (u, v) = self.endpoints(ElementId::new(e));
            if let Some(t) = forest.connected_since(u, v) {
                *l = Some(l.map_or(t, |x| x.min(t)));
            }
        }
        layer
    }
}
