//! Fixed small instances used by `check` and the acceptance tests.

use super::generate::{generate_instance, GeneratorKind, GeneratorParams};
use crate::instance::Instance;
use crate::matroid::{GraphicMatroid, LaminarTree, MatroidSpec, PartitionMatroid, UniformMatroid};

#[derive(Debug, Clone)]
pub struct SuiteInstance {
    pub name: String,
    pub instance: Instance<f64>,
}

impl SuiteInstance {
    fn new(name: impl Into<String>, instance: Instance<f64>) -> Self {
        SuiteInstance {
            name: name.into(),
            instance,
        }
    }

    pub fn is_laminar(&self) -> bool {
        self.instance.laminar().is_some()
    }
}

fn laminar(
    n: usize,
    weights: Vec<f64>,
    family: Vec<(Vec<usize>, usize)>,
    root: usize,
) -> Instance<f64> {
    let tree = LaminarTree::from_family(n, family, Some(root)).expect("suite family is laminar");
    Instance::new(weights, MatroidSpec::Laminar(tree)).expect("suite weights are valid")
}

fn generated(kind: GeneratorKind, params: GeneratorParams, seed: u64) -> Instance<f64> {
    generate_instance(kind, &params, seed).expect("suite generator parameters are valid")
}

/// The four-element laminar example: `{0,1}` with capacity 1 under a ground
/// set of capacity 2, weights 10, 8, 6, 4.
pub fn laminar_four() -> Instance<f64> {
    laminar(4, vec![10.0, 8.0, 6.0, 4.0], vec![(vec![0, 1], 1)], 2)
}

/// Three laminar instances for Monte Carlo cross-checks.
pub fn reference_instances() -> Vec<SuiteInstance> {
    vec![
        SuiteInstance::new("laminar-four", laminar_four()),
        SuiteInstance::new(
            "laminar-chain-7",
            laminar(
                7,
                vec![9.0, 3.0, 7.0, 5.0, 8.0, 2.0, 6.0],
                vec![(vec![0, 1, 2, 3], 2), (vec![0, 1], 1), (vec![4, 5], 1)],
                3,
            ),
        ),
        SuiteInstance::new(
            "laminar-clustered-8",
            generated(
                GeneratorKind::LaminarClustered,
                GeneratorParams {
                    cluster_size: Some(3),
                    rank: Some(3),
                    ..GeneratorParams::with_n(8)
                },
                11,
            ),
        ),
    ]
}

/// Small instances over all matroid kinds: `n ≤ 12`, and `n ≤ 10` for the
/// laminar ones.
pub fn suite() -> Vec<SuiteInstance> {
    let mut s = vec![SuiteInstance::new(
        "uniform-1-of-2",
        Instance::new(
            vec![2.0, 1.0],
            MatroidSpec::Uniform(UniformMatroid::new(2, 1)),
        )
        .unwrap(),
    )];
    s.extend(reference_instances());
    let uniform = |n, k| GeneratorParams {
        rank: Some(k),
        ..GeneratorParams::with_n(n)
    };
    s.push(SuiteInstance::new(
        "uniform-8-3",
        generated(GeneratorKind::Uniform, uniform(8, 3), 1),
    ));
    s.push(SuiteInstance::new(
        "uniform-12-5",
        generated(GeneratorKind::Uniform, uniform(12, 5), 2),
    ));
    s.push(SuiteInstance::new(
        "uniform-10-1",
        generated(GeneratorKind::Uniform, uniform(10, 1), 3),
    ));
    s.push(SuiteInstance::new(
        "uniform-6-2-tied",
        Instance::new(
            vec![1.0; 6],
            MatroidSpec::Uniform(UniformMatroid::new(6, 2)),
        )
        .unwrap(),
    ));
    let partition = |n, p| GeneratorParams {
        parts: Some(p),
        ..GeneratorParams::with_n(n)
    };
    s.push(SuiteInstance::new(
        "partition-9-3",
        generated(GeneratorKind::Partition, partition(9, 3), 4),
    ));
    s.push(SuiteInstance::new(
        "partition-12-4",
        generated(GeneratorKind::Partition, partition(12, 4), 5),
    ));
    s.push(SuiteInstance::new(
        "partition-10-5",
        generated(GeneratorKind::Partition, partition(10, 5), 6),
    ));
    s.push(SuiteInstance::new(
        "partition-7-loose",
        Instance::new(
            vec![4.0, 7.0, 1.0, 3.0, 6.0, 2.0, 5.0],
            MatroidSpec::Partition(
                PartitionMatroid::new(7, vec![(vec![0, 1, 2], 1), (vec![3, 4], 1)]).unwrap(),
            ),
        )
        .unwrap(),
    ));
    let k4 = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    s.push(SuiteInstance::new(
        "graphic-k4",
        Instance::new(
            vec![3.0, 6.0, 1.0, 5.0, 2.0, 4.0],
            MatroidSpec::Graphic(GraphicMatroid::new(4, k4).unwrap()),
        )
        .unwrap(),
    ));
    let graphic = |n, v| GeneratorParams {
        vertices: Some(v),
        ..GeneratorParams::with_n(n)
    };
    s.push(SuiteInstance::new(
        "graphic-10-6",
        generated(GeneratorKind::GraphicRandom, graphic(10, 6), 7),
    ));
    s.push(SuiteInstance::new(
        "graphic-12-5",
        generated(GeneratorKind::GraphicRandom, graphic(12, 5), 8),
    ));
    s.push(SuiteInstance::new(
        "graphic-8-4",
        generated(GeneratorKind::GraphicRandom, graphic(8, 4), 9),
    ));
    let lam = |n, depth| GeneratorParams {
        depth,
        ..GeneratorParams::with_n(n)
    };
    s.push(SuiteInstance::new(
        "laminar-random-8",
        generated(GeneratorKind::LaminarRandom, lam(8, 2), 10),
    ));
    s.push(SuiteInstance::new(
        "laminar-random-10a",
        generated(GeneratorKind::LaminarRandom, lam(10, 3), 12),
    ));
    s.push(SuiteInstance::new(
        "laminar-random-10b",
        generated(GeneratorKind::LaminarRandom, lam(10, 3), 13),
    ));
    s.push(SuiteInstance::new(
        "laminar-clustered-10",
        generated(
            GeneratorKind::LaminarClustered,
            GeneratorParams {
                cluster_size: Some(4),
                ..GeneratorParams::with_n(10)
            },
            14,
        ),
    ));
    s.push(SuiteInstance::new(
        "laminar-flat-6-3",
        laminar(6, vec![6.0, 5.0, 4.0, 3.0, 2.0, 1.0], vec![], 3),
    ));
    s.push(SuiteInstance::new(
        "laminar-free-5",
        laminar(5, vec![1.0, 4.0, 2.0, 5.0, 3.0], vec![], 5),
    ));
    s.push(SuiteInstance::new(
        "laminar-tied-6",
        laminar(
            6,
            vec![2.0, 2.0, 1.0, 1.0, 1.0, 1.0],
            vec![(vec![0, 1, 2], 1)],
            2,
        ),
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn suite_shape() {
        let s = suite();
        assert!(s.len() >= 20);
        let names: HashSet<&str> = s.iter().map(|i| i.name.as_str()).collect();
        assert_eq!(names.len(), s.len());
        for kind in ["uniform", "partition", "graphic", "laminar"] {
            assert!(
                s.iter().any(|i| i.instance.matroid().kind() == kind),
                "{kind}"
            );
        }
        for i in &s {
            assert!(i.instance.n() <= 12, "{}", i.name);
            if i.is_laminar() {
                assert!(i.instance.n() <= 10, "{}", i.name);
            }
        }
    }

    #[test]
    fn references_are_laminar() {
        assert_eq!(reference_instances().len(), 3);
        assert!(reference_instances().iter().all(SuiteInstance::is_laminar));
    }
}
