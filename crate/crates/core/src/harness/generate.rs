//! Seeded instance generators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::InstanceError;
use crate::instance::{
    validate_instance, Instance, RawInstance, RawLaminarSet, RawMatroid, RawPart,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Uniform,
    Partition,
    GraphicRandom,
    LaminarRandom,
    /// Geometrically decaying weights with the heaviest ones packed into one
    /// small-capacity set.
    LaminarClustered,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::Uniform,
        GeneratorKind::Partition,
        GeneratorKind::GraphicRandom,
        GeneratorKind::LaminarRandom,
        GeneratorKind::LaminarClustered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::Partition => "partition",
            GeneratorKind::GraphicRandom => "graphic-random",
            GeneratorKind::LaminarRandom => "laminar-random",
            GeneratorKind::LaminarClustered => "laminar-clustered",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown generator {s:?}"))
    }
}

/// Knobs for the generators; unset options get size-dependent defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneratorParams {
    pub n: usize,
    /// Uniform rank, or ground-set capacity for laminar kinds.
    pub rank: Option<usize>,
    /// Number of partition blocks.
    pub parts: Option<usize>,
    /// Vertex count of the random multigraph.
    pub vertices: Option<usize>,
    /// Nesting depth below the ground set for random laminar families.
    pub depth: usize,
    pub cluster_size: Option<usize>,
    pub cluster_capacity: usize,
    /// Ratio between consecutive clustered weights.
    pub decay: f64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            n: 10,
            rank: None,
            parts: None,
            vertices: None,
            depth: 3,
            cluster_size: None,
            cluster_capacity: 1,
            decay: 0.7,
        }
    }
}

impl GeneratorParams {
    pub fn with_n(n: usize) -> Self {
        GeneratorParams {
            n,
            ..GeneratorParams::default()
        }
    }
}

fn invalid(msg: impl Into<String>) -> InstanceError {
    InstanceError::Invalid(msg.into())
}

/// Builds a raw instance description; the same `(kind, params, seed)` always
/// gives the same output.
pub fn generate_raw(
    kind: GeneratorKind,
    params: &GeneratorParams,
    seed: u64,
) -> Result<RawInstance<f64>, InstanceError> {
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (1..=n).map(|w| w as f64).collect();
    weights.shuffle(&mut rng);

    let matroid = match kind {
        GeneratorKind::Uniform => {
            let rank = params.rank.unwrap_or((n / 3).max(1));
            if n > 0 && !(1..=n).contains(&rank) {
                return Err(invalid(format!("uniform rank {rank} outside 1..={n}")));
            }
            RawMatroid::Uniform { rank }
        }
        GeneratorKind::Partition => {
            let blocks = params.parts.unwrap_or((n / 3).max(1));
            if blocks == 0 {
                return Err(invalid("partition needs at least one block"));
            }
            let mut members = vec![Vec::new(); blocks];
            for e in 0..n {
                members[rng.random_range(0..blocks)].push(e);
            }
            let parts = members
                .into_iter()
                .filter(|m| !m.is_empty())
                .map(|m| {
                    let capacity = rng.random_range(1..=m.len().div_ceil(2));
                    RawPart {
                        members: m,
                        capacity,
                    }
                })
                .collect();
            RawMatroid::Partition { parts }
        }
        GeneratorKind::GraphicRandom => {
            let vertices = params.vertices.unwrap_or(n / 2 + 1).max(2);
            let edges = (0..n)
                .map(|_| {
                    let u = rng.random_range(0..vertices);
                    let v = (u + rng.random_range(1..vertices)) % vertices;
                    [u, v]
                })
                .collect();
            RawMatroid::Graphic {
                vertices: Some(vertices),
                edges,
            }
        }
        GeneratorKind::LaminarRandom => {
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(&mut rng);
            let sets = random_children(&ids, params.depth, &mut rng);
            let root_capacity = match params.rank {
                Some(r) => r,
                None => rng.random_range(1..=n.div_ceil(2).max(1)),
            };
            RawMatroid::Laminar {
                sets,
                root_capacity: Some(root_capacity),
            }
        }
        GeneratorKind::LaminarClustered => {
            let size = params.cluster_size.unwrap_or(n.min(4));
            if size == 0 || size > n {
                return Err(invalid(format!("cluster size {size} outside 1..={n}")));
            }
            if params.cluster_capacity == 0 {
                return Err(invalid("cluster capacity must be positive"));
            }
            if !(params.decay > 0.0 && params.decay < 1.0) {
                return Err(invalid(format!("decay {} outside (0, 1)", params.decay)));
            }
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(&mut rng);
            // ids[r] receives the r-th largest weight; the cluster is ids[..size].
            for (r, &e) in ids.iter().enumerate() {
                weights[e] = 100.0 * params.decay.powi(r as i32);
            }
            let mut cluster = ids[..size].to_vec();
            cluster.sort_unstable();
            RawMatroid::Laminar {
                sets: vec![RawLaminarSet::leaf(cluster, params.cluster_capacity)],
                root_capacity: Some(params.rank.unwrap_or((n / 3).max(1))),
            }
        }
    };
    Ok(RawInstance {
        n,
        weights,
        matroid,
    })
}

/// Splits `set` into up to four disjoint proper subsets, recursively.
fn random_children<R: Rng>(set: &[usize], depth: usize, rng: &mut R) -> Vec<RawLaminarSet> {
    if depth == 0 || set.len() < 2 {
        return Vec::new();
    }
    let count = rng.random_range(1..=4.min(set.len()));
    let mut cuts: Vec<usize> = (0..count + 1)
        .map(|_| rng.random_range(0..=set.len()))
        .collect();
    cuts.sort_unstable();
    cuts.windows(2)
        .map(|w| &set[w[0]..w[1]])
        .filter(|s| !s.is_empty() && s.len() < set.len())
        .map(|s| {
            let mut members = s.to_vec();
            let children = random_children(s, depth - 1, rng);
            let nested: HashSet<usize> = crate::instance::flatten_family(&children)
                .into_iter()
                .flat_map(|(m, _)| m)
                .collect();
            members.retain(|e| !nested.contains(e));
            members.sort_unstable();
            RawLaminarSet {
                members,
                children,
                capacity: rng.random_range(1..=s.len().div_ceil(2)),
            }
        })
        .collect()
}

pub fn generate_instance(
    kind: GeneratorKind,
    params: &GeneratorParams,
    seed: u64,
) -> Result<Instance<f64>, InstanceError> {
    validate_instance(generate_raw(kind, params, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{Matroid, MatroidSpec};

    #[test]
    fn deterministic_in_seed() {
        for kind in GeneratorKind::ALL {
            let p = GeneratorParams::with_n(12);
            assert_eq!(
                generate_raw(kind, &p, 7).unwrap(),
                generate_raw(kind, &p, 7).unwrap()
            );
            assert_ne!(
                generate_raw(kind, &p, 7).unwrap(),
                generate_raw(kind, &p, 8).unwrap()
            );
            assert_eq!(kind.name().parse::<GeneratorKind>(), Ok(kind));
        }
    }

    #[test]
    fn uniform_weights_distinct() {
        let p = GeneratorParams {
            rank: Some(3),
            ..GeneratorParams::with_n(10)
        };
        let inst = generate_instance(GeneratorKind::Uniform, &p, 1).unwrap();
        assert_eq!(inst.n(), 10);
        let mut w = inst.weights().to_vec();
        w.sort_by(f64::total_cmp);
        w.dedup();
        assert_eq!(w.len(), 10);
        assert_eq!(inst.matroid().rank_unchecked(inst.weight_order()), 3);
    }

    #[test]
    fn random_laminar_validates() {
        for seed in 0..50 {
            let inst = generate_instance(
                GeneratorKind::LaminarRandom,
                &GeneratorParams::with_n(12),
                seed,
            )
            .unwrap();
            let tree = inst.laminar().unwrap();
            assert!(tree.nodes().iter().all(|v| v.capacity >= 1));
            assert!(tree.max_depth() <= 4);
        }
    }

    #[test]
    fn clustered_heaviest_inside_cluster() {
        let p = GeneratorParams {
            cluster_size: Some(4),
            ..GeneratorParams::with_n(12)
        };
        let inst = generate_instance(GeneratorKind::LaminarClustered, &p, 3).unwrap();
        let MatroidSpec::Laminar(tree) = inst.matroid() else {
            panic!("not laminar")
        };
        let cluster = tree
            .nodes()
            .iter()
            .position(|v| v.size == 4)
            .expect("cluster node");
        assert_eq!(tree.node(cluster).capacity, 1);
        let members = tree.elements_of(cluster);
        let mut top: Vec<_> = inst.weight_order()[..4].to_vec();
        top.sort_unstable();
        assert_eq!(top, members);
    }

    #[test]
    fn bad_params_rejected() {
        let p = GeneratorParams {
            rank: Some(11),
            ..GeneratorParams::with_n(10)
        };
        assert!(generate_raw(GeneratorKind::Uniform, &p, 0).is_err());
        let p = GeneratorParams {
            decay: 1.5,
            ..GeneratorParams::with_n(10)
        };
        assert!(generate_raw(GeneratorKind::LaminarClustered, &p, 0).is_err());
    }
}
