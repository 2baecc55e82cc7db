use proptest::prelude::*;

use matsec_core::exact::{
    brute_opt, check_matroid_axioms, ids_to_mask, mask_to_bools, mask_to_ids, Mask,
};
use matsec_core::free_order::{j_indices, run_free_order, JIndex, SamplePhase};
use matsec_core::harness::{generate_instance, GeneratorKind, GeneratorParams};
use matsec_core::laminar::{consecutive_order, interval_partition, LaminarSecretary, Phase2Order};
use matsec_core::matroid::{rank_by_greedy, span_layers_incremental, Matroid, MatroidSpec};
use matsec_core::secretary::ThresholdRule;
use matsec_core::{ElementId, Instance, InstanceF32, InstanceF64, RationalInstance};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KINDS: [GeneratorKind; 5] = [
    GeneratorKind::Uniform,
    GeneratorKind::Partition,
    GeneratorKind::GraphicRandom,
    GeneratorKind::LaminarRandom,
    GeneratorKind::LaminarClustered,
];

fn instance(kind: usize, n: usize, seed: u64) -> InstanceF64 {
    generate_instance(KINDS[kind], &GeneratorParams::with_n(n), seed).unwrap()
}

/// Same matroid, small integer weights with many ties.
fn tied(inst: &InstanceF64, weights: &[u8]) -> InstanceF64 {
    let w = weights[..inst.n()].iter().map(|&x| x as f64).collect();
    Instance::new(w, inst.matroid().clone()).unwrap()
}

fn any_instance(max_n: usize) -> impl Strategy<Value = InstanceF64> {
    (0..KINDS.len(), 1..=max_n, any::<u64>()).prop_map(|(k, n, s)| instance(k, n, s))
}

fn laminar_instance(max_n: usize) -> impl Strategy<Value = InstanceF64> {
    (3..5usize, 1..=max_n, any::<u64>()).prop_map(|(k, n, s)| instance(k, n, s))
}

fn full_mask(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

fn rank(inst: &InstanceF64, m: Mask) -> usize {
    inst.matroid().rank_unchecked(&mask_to_ids(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_matroids_satisfy_axioms(inst in any_instance(9)) {
        prop_assert_eq!(check_matroid_axioms(inst.matroid()).unwrap(), Ok(()));
    }

    #[test]
    fn rank_is_bounded_monotone_submodular(inst in any_instance(10), a in any::<u32>(), b in any::<u32>()) {
        let full = full_mask(inst.n());
        let (a, b) = (a & full, b & full);
        let (ra, rb) = (rank(&inst, a), rank(&inst, b));
        prop_assert!(ra <= a.count_ones() as usize);
        prop_assert!(rank(&inst, a & b) <= ra);
        prop_assert!(ra <= rank(&inst, a | b));
        prop_assert!(rank(&inst, a | b) + rank(&inst, a & b) <= ra + rb);
        prop_assert_eq!(ra, rank_by_greedy(inst.matroid(), &mask_to_ids(a)));
    }

    #[test]
    fn span_matches_rank_definition(inst in any_instance(10), a in any::<u32>()) {
        let a = a & full_mask(inst.n());
        let span = inst.matroid().span(&mask_to_ids(a)).unwrap();
        let direct: Vec<ElementId> = (0..inst.n() as u32)
            .filter(|&f| rank(&inst, a | 1 << f) == rank(&inst, a))
            .map(ElementId)
            .collect();
        prop_assert_eq!(&span, &direct);
        prop_assert_eq!(rank(&inst, ids_to_mask(&span)), rank(&inst, a));
    }

    #[test]
    fn fast_span_layers_match_rescan(inst in any_instance(12), a in any::<u32>(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut order = mask_to_ids(a & full_mask(inst.n()));
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(
            inst.matroid().span_layers(&order),
            span_layers_incremental(inst.matroid(), &order)
        );
    }

    #[test]
    fn greedy_equals_brute_force(inst in any_instance(12), w in prop::collection::vec(0u8..4, 12)) {
        for inst in [inst.clone(), tied(&inst, &w)] {
            let mut greedy = inst.opt();
            greedy.sort_unstable();
            prop_assert_eq!(greedy, brute_opt(&inst).unwrap());
        }
    }

    #[test]
    fn sample_optimum_contains_opt_inside_sample(inst in any_instance(12), a in any::<u32>()) {
        let sample = mask_to_bools(a, inst.n());
        let opt_a = inst.greedy_in_mask(&sample);
        for f in inst.opt() {
            if sample[f.index()] {
                prop_assert!(opt_a.contains(&f), "{f:?} in OPT and A but not in OPT_A");
            }
        }
    }

    #[test]
    fn free_order_output_is_good_and_independent(inst in any_instance(12), a in any::<u32>()) {
        let phase = SamplePhase::forced(&inst, mask_to_bools(a, inst.n()));
        let out = run_free_order(&inst, &phase);
        prop_assert!(inst.matroid().independent_unchecked(&out));
        for &f in &out {
            prop_assert!(!phase.contains(f));
            let heavier: Vec<ElementId> =
                phase.sorted().iter().copied().filter(|&s| inst.beats(s, f)).collect();
            let mut with = heavier.clone();
            with.push(f);
            prop_assert!(inst.matroid().rank_unchecked(&with) > inst.matroid().rank_unchecked(&heavier));
        }
    }

    #[test]
    fn j_indices_follow_definition(inst in any_instance(10), a in any::<u32>()) {
        let n = inst.n();
        let a = a & full_mask(n);
        let mut prefix = vec![0 as Mask; n + 1];
        for (j, e) in inst.weight_order().iter().enumerate() {
            prefix[j + 1] = prefix[j] | 1 << e.0;
        }
        let first = |side: Mask, f: u32| {
            (1..=n)
                .find(|&j| {
                    let s = prefix[j] & side & !(1 << f);
                    rank(&inst, s | 1 << f) == rank(&inst, s)
                })
                .map_or(JIndex::Never, JIndex::At)
        };
        let sample = mask_to_bools(a, n);
        for f in 0..n as u32 {
            let j = j_indices(&inst, &sample, ElementId(f));
            prop_assert_eq!(j.j1, first(a, f));
            prop_assert_eq!(j.j2, first(full_mask(n) & !a, f));
        }
    }

    #[test]
    fn consecutive_order_keeps_sets_contiguous(n in 1usize..=50, depth in 1usize..=5, seed in any::<u64>()) {
        let params = GeneratorParams { depth, ..GeneratorParams::with_n(n) };
        let inst = generate_instance(GeneratorKind::LaminarRandom, &params, seed).unwrap();
        let tree = inst.laminar().unwrap();
        let order = consecutive_order(tree);
        let mut seen = order.elements().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).map(ElementId::new).collect::<Vec<_>>());
        for v in 0..tree.num_nodes() {
            let mut positions: Vec<usize> =
                tree.elements_of(v).iter().map(|&e| order.position(e)).collect();
            positions.sort_unstable();
            let range = order.node_range(v);
            prop_assert_eq!(positions, range.collect::<Vec<_>>());
        }
    }

    #[test]
    fn interval_partition_lemmas(inst in laminar_instance(10), a in any::<u32>()) {
        let tree = inst.laminar().unwrap();
        let order = consecutive_order(tree);
        let independent = inst.greedy_in_mask(&mask_to_bools(a, inst.n()));
        let scheme = interval_partition(tree, &order, &independent).unwrap();
        let mut covered = 0 as Mask;
        for (part, anchor) in scheme.parts.iter().zip(&scheme.anchors) {
            let pos: Vec<usize> = part.iter().map(|&e| order.position(e)).collect();
            prop_assert!(pos.windows(2).all(|w| w[1] == w[0] + 1), "not a block: {pos:?}");
            if let Some(f) = anchor {
                prop_assert!(part.contains(f));
            }
            let m = ids_to_mask(part);
            prop_assert_eq!(covered & m, 0);
            covered |= m;
        }
        prop_assert_eq!(covered, full_mask(inst.n()));
        // Every transversal is independent.
        let mut stack = vec![(0usize, Vec::new())];
        while let Some((i, picked)) = stack.pop() {
            if i == scheme.parts.len() {
                prop_assert!(inst.matroid().independent_unchecked(&picked), "{picked:?}");
                continue;
            }
            for &e in &scheme.parts[i] {
                let mut next = picked.clone();
                next.push(e);
                stack.push((i + 1, next));
            }
        }
    }

    #[test]
    fn laminar_runs_are_independent(inst in laminar_instance(30), seed in any::<u64>(), order in 0..4usize) {
        let phase2 = [Phase2Order::Random, Phase2Order::AdversarialId, Phase2Order::Reversed, Phase2Order::OptLast][order];
        let ls = LaminarSecretary::new(&inst).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let simple = ls.run_simple(&mut rng, phase2).unwrap();
        let improved = ls.run_improved(&mut rng, 0.5773, phase2).unwrap();
        for o in [simple, improved] {
            prop_assert!(inst.matroid().independent_unchecked(&o.selected));
            prop_assert!(o.selected.iter().all(|e| !o.sample[e.index()]));
        }
    }

    #[test]
    fn threshold_rule_skips_sample_and_picks_once(keys in prop::collection::hash_set(any::<u32>(), 1..40)) {
        let keys: Vec<u32> = keys.into_iter().collect();
        let mut rule = ThresholdRule::new(keys.len()).unwrap();
        let r = rule.sample_size();
        let picks: Vec<bool> = keys.iter().enumerate().map(|(i, &k)| rule.observe(ElementId::new(i), k)).collect();
        prop_assert!(picks[..r].iter().all(|p| !p));
        prop_assert!(picks.iter().filter(|&&p| p).count() <= 1);
        if let Some(i) = picks.iter().position(|&p| p) {
            let best_sampled = keys[..r].iter().max();
            prop_assert!(best_sampled.is_none_or(|&b| keys[i] > b));
            prop_assert!(keys[r..i].iter().all(|&k| best_sampled.is_some_and(|&b| k <= b)));
        }
    }

    #[test]
    fn scalar_types_agree(inst in any_instance(12)) {
        let w32: Vec<f32> = inst.weights().iter().map(|&w| w as f32).collect();
        let wq: Vec<Ratio<i64>> = inst.weights().iter().map(|&w| Ratio::from_integer(w as i64)).collect();
        let f32_inst: InstanceF32 = Instance::new(w32, inst.matroid().clone()).unwrap();
        let q_inst: RationalInstance = Instance::new(wq, inst.matroid().clone()).unwrap();
        prop_assert_eq!(f32_inst.opt(), inst.opt());
        prop_assert_eq!(q_inst.opt(), inst.opt());
        prop_assert_eq!(q_inst.weight_order(), inst.weight_order());
    }
}

#[test]
fn laminar_matroid_spec_is_recognized() {
    let inst = instance(3, 6, 1);
    assert!(matches!(inst.matroid(), MatroidSpec::Laminar(_)));
}
