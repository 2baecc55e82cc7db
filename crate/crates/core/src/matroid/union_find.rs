/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    pub fn connected(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Union-by-rank forest without path compression whose links remember when
/// they were made.
///
/// `connected_since(a, b)` answers "from which union step on were `a` and `b`
/// connected", which is the maximum link time on the forest path between them.
#[derive(Debug, Clone)]
pub struct TimedForest {
    parent: Vec<u32>,
    rank: Vec<u8>,
    link_time: Vec<usize>,
}

impl TimedForest {
    pub fn new(len: usize) -> Self {
        TimedForest {
            parent: (0..len as u32).collect(),
            rank: vec![0; len],
            link_time: vec![0; len],
        }
    }

    fn root(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Links the classes of `a` and `b` at `time`. Times must be nondecreasing
    /// across calls.
    pub fn union(&mut self, a: usize, b: usize, time: usize) -> bool {
        let (mut ra, mut rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.link_time[rb] = time;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] += 1;
        }
        true
    }

    pub fn connected_since(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return Some(0);
        }
        let (mut x, mut y) = (a, b);
        let (mut tx, mut ty) = (0usize, 0usize);
        // Climb from the lower-rank side; ranks strictly increase towards roots.
        loop {
            if x == y {
                return Some(tx.max(ty));
            }
            let x_root = self.parent[x] as usize == x;
            let y_root = self.parent[y] as usize == y;
            if x_root && y_root {
                return None;
            }
            let climb_x = !x_root && (y_root || self.rank[x] <= self.rank[y]);
            if climb_x {
                tx = tx.max(self.link_time[x]);
                x = self.parent[x] as usize;
            } else {
                ty = ty.max(self.link_time[y]);
                y = self.parent[y] as usize;
            }
        }
    }
}
