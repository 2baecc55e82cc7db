use rayon::prelude::*;

use super::secretary::rule_rank_probabilities;
use super::subsets::{ids_to_mask, mask_to_bools, mask_to_ids, Mask, SubsetTables};
use super::{
    chunk_ranges, ExactReport, OracleError, Violation, ViolationLog, PROBABILITY_TOLERANCE,
};
use crate::algorithm::Algorithm;
use crate::instance::Instance;
use crate::laminar::{LaminarError, LaminarSecretary, Parity, PartitionScheme};
use crate::weight::{ElementId, Weight};

pub const EXACT_LAMINAR_MAX_N: usize = 14;

/// Instance data in bitmask form, shared by all sample masks.
struct Setup<'a, W> {
    instance: &'a Instance<W>,
    secretary: LaminarSecretary<'a, W>,
    tables: SubsetTables,
    /// Element at one-based consecutive index `k` is `at[k]`.
    at: Vec<u32>,
    index: Vec<usize>,
    family: Vec<Mask>,
    opt: Mask,
    rank_probs: Vec<Vec<f64>>,
}

struct Scheme {
    factor: f64,
    parts: Vec<Mask>,
}

#[derive(Default)]
struct Tally {
    selected: Vec<f64>,
    solitary: Vec<f64>,
    z: Vec<f64>,
    part_max: f64,
    z_weighted: f64,
    log: ViolationLog,
}

impl<W: Weight> Setup<'_, W> {
    fn weight(&self, e: u32) -> f64 {
        self.instance.weight(ElementId(e)).as_f64()
    }

    fn elements(mask: Mask) -> impl Iterator<Item = u32> {
        (0..Mask::BITS).filter(move |i| mask >> i & 1 == 1)
    }

    fn block(&self, lo: usize, hi: usize) -> Mask {
        (lo..=hi).fold(0, |m, k| m | 1 << self.at[k])
    }

    /// `P_j = {f_k : i_{j-1} ≤ k ≤ i_j} \ A` split by the parity of `j`.
    fn odd_even(&self, a: Mask, opt_a: Mask) -> (Vec<Mask>, Vec<Mask>) {
        let n = self.at.len() - 1;
        let mut cuts: Vec<usize> = Self::elements(opt_a)
            .map(|e| self.index[e as usize])
            .collect();
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(n);
        let (mut odd, mut even) = (Vec::new(), Vec::new());
        for j in 1..cuts.len() {
            let part = self.block(cuts[j - 1].max(1), cuts[j]) & !a;
            if part == 0 {
                continue;
            }
            if j % 2 == 1 {
                odd.push(part);
            } else {
                even.push(part);
            }
        }
        (odd, even)
    }

    /// `P̃(I)` as `(anchor, part)` pairs, read straight off the definition.
    fn interval(&self, independent: Mask) -> Vec<(Option<u32>, Mask)> {
        let n = self.at.len() - 1;
        if independent == 0 {
            return vec![(None, self.block(1, n))];
        }
        let mut parts: Vec<(Option<u32>, Mask)> =
            Self::elements(independent).map(|f| (Some(f), 0)).collect();
        for i in 1..=n {
            let f = self.at[i];
            let l = self
                .family
                .iter()
                .copied()
                .filter(|&l| l >> f & 1 == 1 && l & independent != 0)
                .min_by_key(|l| l.count_ones())
                .expect("the ground set meets every non-empty I");
            let positions: Vec<usize> = Self::elements(l & independent)
                .map(|e| self.index[e as usize])
                .collect();
            let j = positions
                .iter()
                .copied()
                .filter(|&j| j <= i)
                .max()
                .or_else(|| positions.iter().copied().filter(|&j| j > i).min())
                .expect("L meets I");
            let anchor = self.at[j];
            let slot = parts.iter_mut().find(|(a, _)| *a == Some(anchor)).unwrap();
            slot.1 |= 1 << f;
        }
        parts
    }

    /// Every choice of one element per part is independent.
    fn transversals_independent(&self, parts: &[Mask]) -> Option<Mask> {
        fn go(tables: &SubsetTables, parts: &[Mask], acc: Mask) -> Option<Mask> {
            let Some((&first, rest)) = parts.split_first() else {
                return (!tables.is_independent(acc)).then_some(acc);
            };
            Setup::<f64>::elements(first).find_map(|e| go(tables, rest, acc | 1 << e))
        }
        go(&self.tables, parts, 0)
    }

    fn sorted(parts: impl IntoIterator<Item = Mask>) -> Vec<Mask> {
        let mut v: Vec<Mask> = parts.into_iter().collect();
        v.sort_unstable();
        v
    }

    fn module_parts(scheme: &PartitionScheme) -> Vec<Mask> {
        Self::sorted(scheme.parts.iter().map(|p| ids_to_mask(p)))
    }

    fn schemes(&self, algorithm: Algorithm, a: Mask, log: &mut ViolationLog) -> Vec<Scheme> {
        let n = self.at.len() - 1;
        let bools = mask_to_bools(a, n);
        let opt_a = self.tables.best_within(a);
        let sample = || mask_to_ids(a);
        if algorithm == Algorithm::LaminarSimple {
            if opt_a == 0 {
                let whole: Vec<Mask> = Some(self.tables.full() & !a)
                    .filter(|&m| m != 0)
                    .into_iter()
                    .collect();
                let (_, own) = self.secretary.plan_simple(&bools, Parity::Odd);
                if Self::module_parts(&own) != whole {
                    log.push(Violation::SchemeMismatch {
                        sample: sample(),
                        coin: None,
                    });
                }
                return vec![Scheme {
                    factor: 1.0,
                    parts: whole,
                }];
            }
            let (odd, even) = self.odd_even(a, opt_a);
            let mut out = Vec::with_capacity(2);
            for (coin, parts) in [(Parity::Odd, odd), (Parity::Even, even)] {
                let (_, own) = self.secretary.plan_simple(&bools, coin);
                if Self::module_parts(&own) != Self::sorted(parts.iter().copied()) {
                    log.push(Violation::SchemeMismatch {
                        sample: sample(),
                        coin: Some(coin),
                    });
                }
                if let Some(t) = self.transversals_independent(&parts) {
                    log.push(Violation::DependentTransversal {
                        sample: sample(),
                        transversal: mask_to_ids(t),
                    });
                }
                out.push(Scheme { factor: 0.5, parts });
            }
            return out;
        }

        let full_parts = self.interval(opt_a);
        for &(anchor, part) in &full_parts {
            let Some(anchor) = anchor else { continue };
            let idx: Vec<usize> = Self::elements(part)
                .map(|e| self.index[e as usize])
                .collect();
            let (lo, hi) = (*idx.iter().min().unwrap(), *idx.iter().max().unwrap());
            let ai = self.index[anchor as usize];
            if hi - lo + 1 != idx.len() || ai < lo || ai > hi {
                log.push(Violation::NonIntervalPart {
                    sample: sample(),
                    anchor: ElementId(anchor),
                });
            }
        }
        for &l in &self.family {
            if l & opt_a == 0 {
                continue;
            }
            let covered = full_parts
                .iter()
                .filter(|(anchor, _)| anchor.is_some_and(|f| l >> f & 1 == 1))
                .fold(0, |m, &(_, p)| m | p);
            if l & !covered != 0 {
                log.push(Violation::Coverage {
                    sample: sample(),
                    set: mask_to_ids(l),
                });
            }
        }
        let bare: Vec<Mask> = full_parts.iter().map(|&(_, p)| p).collect();
        if let Some(t) = self.transversals_independent(&bare) {
            log.push(Violation::DependentTransversal {
                sample: sample(),
                transversal: mask_to_ids(t),
            });
        }
        let parts: Vec<Mask> = bare.iter().map(|p| p & !a).filter(|&p| p != 0).collect();
        let (_, own) = self.secretary.plan_improved(&bools);
        if Self::module_parts(&own) != Self::sorted(parts.iter().copied()) {
            log.push(Violation::SchemeMismatch {
                sample: sample(),
                coin: None,
            });
        }
        vec![Scheme { factor: 1.0, parts }]
    }

    fn tally(&self, algorithm: Algorithm, q: f64, a: Mask, t: &mut Tally) {
        let n = self.at.len() - 1;
        let size = a.count_ones() as i32;
        let pa = q.powi(size) * (1.0 - q).powi(n as i32 - size);
        for scheme in self.schemes(algorithm, a, &mut t.log) {
            let w = pa * scheme.factor;
            let (mut part_max, mut z_weighted) = (0.0, 0.0);
            for &part in &scheme.parts {
                let mut members: Vec<u32> = Self::elements(part).collect();
                members.sort_unstable_by_key(|&e| self.instance.position(ElementId(e)));
                let probs = &self.rank_probs[members.len()];
                for (&e, p) in members.iter().zip(probs) {
                    t.selected[e as usize] += w * p;
                }
                let in_opt = part & self.opt;
                let c = in_opt.count_ones();
                if c == 0 {
                    continue;
                }
                if c == 1 {
                    t.solitary[in_opt.trailing_zeros() as usize] += w;
                }
                for f in Self::elements(in_opt) {
                    t.z[f as usize] += w / c as f64;
                    z_weighted += self.weight(f) / c as f64;
                }
                part_max += self.weight(members[0]);
            }
            t.part_max += w * part_max;
            t.z_weighted += w * z_weighted;
            if part_max < z_weighted - PROBABILITY_TOLERANCE * z_weighted.max(1.0) {
                t.log.push(Violation::AccountingGap {
                    sample: mask_to_ids(a),
                    part_max,
                    z_weighted,
                });
            }
        }
    }
}

/// Exact expectations of a laminar algorithm, enumerating every sample set
/// with probability `q^|A|(1-q)^(n-|A|)` and, for the odd/even algorithm,
/// both coin outcomes. Within each part the arrival order is uniform, so the
/// rule's selection law depends only on the ranks inside the part.
pub fn exact_laminar<W: Weight>(
    instance: &Instance<W>,
    algorithm: Algorithm,
    q: f64,
) -> Result<ExactReport, OracleError> {
    if !algorithm.needs_laminar() {
        return Err(OracleError::Unsupported(algorithm));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(LaminarError::InvalidProbability(q).into());
    }
    let secretary = LaminarSecretary::new(instance)?;
    let tables = SubsetTables::build(instance, EXACT_LAMINAR_MAX_N)?;
    let n = instance.n();
    let order = secretary.order();
    let mut at = vec![0u32; n + 1];
    let mut index = vec![0usize; n];
    for (k, e) in order.elements().iter().enumerate() {
        at[k + 1] = e.0;
        index[e.index()] = k + 1;
    }
    let tree = secretary.tree();
    let family = (0..tree.num_nodes())
        .map(|v| ids_to_mask(&tree.elements_of(v)))
        .collect();
    let opt = tables.best_within(tables.full());
    let setup = Setup {
        instance,
        at,
        index,
        family,
        opt,
        rank_probs: (0..=n).map(rule_rank_probabilities).collect(),
        tables,
        secretary,
    };

    let chunks: Vec<Tally> = chunk_ranges(1u64 << n)
        .into_par_iter()
        .map(|range| {
            let mut t = Tally {
                selected: vec![0.0; n],
                solitary: vec![0.0; n],
                z: vec![0.0; n],
                ..Tally::default()
            };
            for a in range {
                setup.tally(algorithm, q, a as Mask, &mut t);
            }
            t
        })
        .collect();

    let mut total = Tally {
        selected: vec![0.0; n],
        solitary: vec![0.0; n],
        z: vec![0.0; n],
        ..Tally::default()
    };
    for t in chunks {
        let add =
            |dst: &mut Vec<f64>, src: &[f64]| dst.iter_mut().zip(src).for_each(|(d, s)| *d += s);
        add(&mut total.selected, &t.selected);
        add(&mut total.solitary, &t.solitary);
        add(&mut total.z, &t.z);
        total.part_max += t.part_max;
        total.z_weighted += t.z_weighted;
        total.log.merge(t.log);
    }

    let opt_ids = mask_to_ids(opt);
    let per_opt = |v: &[f64]| opt_ids.iter().map(|e| v[e.index()]).collect::<Vec<f64>>();
    let expected_weight = total
        .selected
        .iter()
        .enumerate()
        .map(|(e, p)| p * setup.weight(e as u32))
        .sum::<f64>();
    let opt_weight = setup.tables.weight(opt);
    let improved = algorithm == Algorithm::LaminarImproved;
    Ok(ExactReport {
        algorithm,
        n,
        q: Some(q),
        opt_weight,
        expected_weight,
        ratio: (expected_weight > 0.0).then(|| opt_weight / expected_weight),
        ordered_probability: None,
        solitary_probability: (!improved).then(|| per_opt(&total.solitary)),
        expected_z: improved.then(|| per_opt(&total.z)),
        part_max_mass: improved.then_some(total.part_max),
        z_weighted_opt: improved.then_some(total.z_weighted),
        selection_probability: total.selected,
        opt: opt_ids,
        violation_count: total.log.count,
        violations: total.log.kept,
    })
}
