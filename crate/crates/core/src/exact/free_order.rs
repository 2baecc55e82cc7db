use rayon::prelude::*;

use super::subsets::{mask_to_bools, mask_to_ids, Mask, SubsetTables};
use super::{chunk_ranges, ExactReport, OracleError, Violation, ViolationLog};
use crate::algorithm::Algorithm;
use crate::free_order::{j_indices, run_free_order, JIndex, SamplePhase};
use crate::instance::Instance;
use crate::matroid::Matroid;
use crate::weight::{ElementId, Weight};

pub const EXACT_FREE_ORDER_MAX_N: usize = 14;

/// Rank-based view of the instance: `rank[m]` for every subset and the masks
/// of the weight-order prefixes `N_0 ⊂ N_1 ⊂ … ⊂ N_n`.
struct RankView {
    n: usize,
    rank: Vec<u8>,
    prefix: Vec<Mask>,
}

impl RankView {
    fn new<W: Weight>(instance: &Instance<W>) -> Self {
        let n = instance.n();
        let rank = (0..1u32 << n)
            .map(|m| instance.matroid().rank_unchecked(&mask_to_ids(m)) as u8)
            .collect();
        let mut prefix = vec![0; n + 1];
        for (j, e) in instance.weight_order().iter().enumerate() {
            prefix[j + 1] = prefix[j] | 1 << e.0;
        }
        RankView { n, rank, prefix }
    }

    fn spans(&self, set: Mask, f: u32) -> bool {
        let without = set & !(1 << f);
        self.rank[(without | 1 << f) as usize] == self.rank[without as usize]
    }

    /// First `j ≥ 1` with `f ∈ span((N_j ∩ side) − f)`. Spans of a growing
    /// chain are nested, so a binary search suffices.
    fn first_spanning(&self, side: Mask, f: u32) -> JIndex {
        if !self.spans(self.prefix[self.n] & side, f) {
            return JIndex::Never;
        }
        let (mut lo, mut hi) = (1, self.n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.spans(self.prefix[mid] & side, f) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        JIndex::At(lo)
    }
}

#[derive(Default)]
struct Tally {
    selected: Vec<u64>,
    ordered: Vec<u64>,
    /// Per sample mask, bit `k` set when `opt[k]` has `j1 ≤ j2`.
    ordered_bits: Vec<u32>,
    log: ViolationLog,
}

/// Exact selection probabilities of the free-order procedure, averaging over
/// all `2^n` equally likely samples.
pub fn exact_free_order<W: Weight>(instance: &Instance<W>) -> Result<ExactReport, OracleError> {
    let n = instance.n();
    let tables = SubsetTables::build(instance, EXACT_FREE_ORDER_MAX_N)?;
    let view = RankView::new(instance);
    let full = tables.full();
    let opt_mask = tables.best_within(full);
    let opt = mask_to_ids(opt_mask);
    let total = 1u64 << n;

    let chunks: Vec<Tally> = chunk_ranges(total)
        .into_par_iter()
        .map(|range| {
            let mut t = Tally {
                selected: vec![0; n],
                ordered: vec![0; opt.len()],
                ..Tally::default()
            };
            for a in range {
                let a = a as Mask;
                let sample = || mask_to_ids(a);
                let phase = SamplePhase::forced(instance, mask_to_bools(a, n));
                let output = run_free_order(instance, &phase);
                let out_mask = output.iter().fold(0 as Mask, |m, e| m | 1 << e.0);
                if !tables.is_independent(out_mask) {
                    t.log.push(Violation::DependentOutput {
                        sample: sample(),
                        output: output.clone(),
                    });
                }
                for &f in &output {
                    t.selected[f.index()] += 1;
                    let heavier = a & view.prefix[instance.position(f)];
                    if view.spans(heavier | 1 << f.0, f.0) {
                        t.log.push(Violation::AcceptedNotGood {
                            sample: sample(),
                            element: f,
                        });
                    }
                }
                let mut bits = 0u32;
                for (k, &f) in opt.iter().enumerate() {
                    let j1 = view.first_spanning(a, f.0);
                    let j2 = view.first_spanning(full & !a, f.0);
                    let own = j_indices(instance, phase.mask(), f);
                    if own.j1 != j1 || own.j2 != j2 {
                        t.log.push(Violation::JIndexMismatch {
                            sample: sample(),
                            element: f,
                        });
                    }
                    if j1 <= j2 {
                        bits |= 1 << k;
                        t.ordered[k] += 1;
                        if a >> f.0 & 1 == 0 && out_mask >> f.0 & 1 == 0 {
                            t.log.push(Violation::UnselectedDespiteOrder {
                                sample: sample(),
                                element: f,
                            });
                        }
                    }
                }
                t.ordered_bits.push(bits);
            }
            t
        })
        .collect();

    let mut selected = vec![0u64; n];
    let mut ordered = vec![0u64; opt.len()];
    let mut ordered_bits = Vec::with_capacity(total as usize);
    let mut log = ViolationLog::default();
    for t in chunks {
        selected
            .iter_mut()
            .zip(&t.selected)
            .for_each(|(s, c)| *s += c);
        ordered
            .iter_mut()
            .zip(&t.ordered)
            .for_each(|(s, c)| *s += c);
        ordered_bits.extend(t.ordered_bits);
        log.merge(t.log);
    }
    let all_opt = ((1u64 << opt.len()) - 1) as u32;
    for a in 0..total as Mask {
        let missing = !(ordered_bits[a as usize] | ordered_bits[(full & !a) as usize]) & all_opt;
        if missing != 0 {
            log.push(Violation::ComplementSymmetry {
                sample: mask_to_ids(a),
                element: opt[missing.trailing_zeros() as usize],
            });
        }
    }

    let denom = total as f64;
    let selection_probability: Vec<f64> = selected.iter().map(|&c| c as f64 / denom).collect();
    let expected_weight = selection_probability
        .iter()
        .enumerate()
        .map(|(e, p)| p * instance.weight(ElementId::new(e)).as_f64())
        .sum::<f64>();
    let opt_weight = tables.weight(opt_mask);
    Ok(ExactReport {
        algorithm: Algorithm::FreeOrder,
        n,
        q: Some(0.5),
        opt,
        opt_weight,
        selection_probability,
        expected_weight,
        ratio: (expected_weight > 0.0).then(|| opt_weight / expected_weight),
        ordered_probability: Some(ordered.iter().map(|&c| c as f64 / denom).collect()),
        solitary_probability: None,
        expected_z: None,
        part_max_mass: None,
        z_weighted_opt: None,
        violation_count: log.count,
        violations: log.kept,
    })
}
