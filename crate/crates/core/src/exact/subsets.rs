//! Bitmask views of small instances: independence and weight tables over all
//! `2^n` subsets, used by the brute-force oracles.

use std::cmp::Ordering;

use super::OracleError;
use crate::instance::Instance;
use crate::matroid::Matroid;
use crate::weight::{ElementId, Weight};

pub type Mask = u32;

pub const BRUTE_OPT_MAX_N: usize = 20;

pub fn mask_to_ids(mask: Mask) -> Vec<ElementId> {
    (0..Mask::BITS as usize)
        .filter(|&i| mask >> i & 1 == 1)
        .map(ElementId::new)
        .collect()
}

pub fn ids_to_mask(set: &[ElementId]) -> Mask {
    set.iter().fold(0, |m, e| m | 1 << e.0)
}

pub fn mask_to_bools(mask: Mask, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Iterates the submasks of `mask`, including `mask` and `0`.
pub fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

/// Tables over every subset of a small instance.
#[derive(Debug, Clone)]
pub struct SubsetTables {
    n: usize,
    independent: Vec<bool>,
    weight: Vec<f64>,
    /// Bit `n-1-p` is set when the element at weight-order position `p` is in
    /// the subset; comparing these numerically compares subsets by their best
    /// differing element.
    order_key: Vec<Mask>,
}

impl SubsetTables {
    pub fn build<W: Weight>(instance: &Instance<W>, max_n: usize) -> Result<Self, OracleError> {
        let n = instance.n();
        if n > max_n {
            return Err(OracleError::TooLarge { n, max: max_n });
        }
        let size = 1usize << n;
        let matroid = instance.matroid();
        let mut independent = vec![false; size];
        let mut weight = vec![0.0; size];
        let mut order_key = vec![0; size];
        for mask in 0..size as Mask {
            let set = mask_to_ids(mask);
            independent[mask as usize] = matroid.independent_unchecked(&set);
            if mask != 0 {
                let low = mask.trailing_zeros() as usize;
                let rest = (mask & (mask - 1)) as usize;
                let e = ElementId::new(low);
                weight[mask as usize] = weight[rest] + instance.weight(e).as_f64();
                order_key[mask as usize] = order_key[rest] | 1 << (n - 1 - instance.position(e));
            }
        }
        Ok(SubsetTables {
            n,
            independent,
            weight,
            order_key,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    pub fn is_independent(&self, mask: Mask) -> bool {
        self.independent[mask as usize]
    }

    pub fn weight(&self, mask: Mask) -> f64 {
        self.weight[mask as usize]
    }

    /// Weight first (with a relative tolerance absorbing float summation
    /// order), then the tie-broken element order.
    pub fn compare(&self, a: Mask, b: Mask) -> Ordering {
        let (wa, wb) = (self.weight(a), self.weight(b));
        let tol = 1e-12 * wa.abs().max(wb.abs()).max(1.0);
        if (wa - wb).abs() > tol {
            return wa.partial_cmp(&wb).unwrap_or(Ordering::Equal);
        }
        self.order_key[a as usize].cmp(&self.order_key[b as usize])
    }

    /// Best independent subset of `mask` by exhaustive search.
    pub fn best_within(&self, mask: Mask) -> Mask {
        submasks(mask)
            .filter(|&s| self.is_independent(s))
            .fold(0, |best, s| {
                if self.compare(s, best) == Ordering::Greater {
                    s
                } else {
                    best
                }
            })
    }
}

/// Maximum-weight independent set by enumerating all subsets.
pub fn brute_opt<W: Weight>(instance: &Instance<W>) -> Result<Vec<ElementId>, OracleError> {
    let tables = SubsetTables::build(instance, BRUTE_OPT_MAX_N)?;
    Ok(mask_to_ids(tables.best_within(tables.full())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{LaminarTree, MatroidSpec, UniformMatroid};
    use crate::weight::ids;

    #[test]
    fn submask_enumeration_is_complete() {
        let subs: Vec<Mask> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b1010, 0b1000, 0b0010, 0]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn brute_opt_examples() {
        let inst = Instance::new(
            vec![9.0, 7.0, 5.0],
            MatroidSpec::Uniform(UniformMatroid::new(3, 2)),
        )
        .unwrap();
        assert_eq!(brute_opt(&inst).unwrap(), ids(&[0, 1]));

        let tree = LaminarTree::from_family(4, vec![(vec![0, 1], 1)], Some(2)).unwrap();
        let inst = Instance::new(vec![10.0, 8.0, 6.0, 4.0], MatroidSpec::Laminar(tree)).unwrap();
        let opt = brute_opt(&inst).unwrap();
        assert_eq!(opt, ids(&[0, 2]));
        assert_eq!(inst.total_weight(&opt), 16.0);

        let empty =
            Instance::<f64>::new(vec![], MatroidSpec::Uniform(UniformMatroid::new(0, 0))).unwrap();
        assert!(brute_opt(&empty).unwrap().is_empty());
    }

    #[test]
    fn equal_weights_resolve_by_id() {
        let inst = Instance::new(
            vec![1.0, 1.0, 1.0, 0.0],
            MatroidSpec::Uniform(UniformMatroid::new(4, 2)),
        )
        .unwrap();
        assert_eq!(brute_opt(&inst).unwrap(), inst.opt());
    }

    #[test]
    fn too_large_rejected() {
        let inst = Instance::new(
            vec![1.0; 21],
            MatroidSpec::Uniform(UniformMatroid::new(21, 2)),
        )
        .unwrap();
        assert_eq!(
            brute_opt(&inst),
            Err(OracleError::TooLarge { n: 21, max: 20 })
        );
    }
}
