//! Exact selection distributions of the threshold rule.

use super::OracleError;
use crate::secretary::{threshold_index, ThresholdRule};
use crate::weight::ElementId;

pub const ENUMERATION_MAX_PART: usize = 8;

/// Visits every permutation of `items` (Heap's algorithm).
pub fn for_each_permutation<T: Clone>(items: &[T], mut visit: impl FnMut(&[T])) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Probability of each candidate being selected by the rule with sample size
/// `r`, by running it on all `m!` arrival orders. `keys` must be distinct;
/// the result is indexed like `keys`. Mass not summing to one is the
/// probability of selecting nobody.
pub fn secretary_selection_dist_with_sample(
    keys: &[u32],
    r: usize,
) -> Result<Vec<f64>, OracleError> {
    let m = keys.len();
    if m > ENUMERATION_MAX_PART {
        return Err(OracleError::TooLarge {
            n: m,
            max: ENUMERATION_MAX_PART,
        });
    }
    let mut wins = vec![0u64; m];
    let mut total = 0u64;
    let indices: Vec<usize> = (0..m).collect();
    for_each_permutation(&indices, |perm| {
        total += 1;
        let mut rule = ThresholdRule::with_sample(m, r);
        for &i in perm {
            if rule.observe(ElementId::new(i), keys[i]) {
                wins[i] += 1;
                break;
            }
        }
    });
    Ok(wins.iter().map(|&w| w as f64 / total as f64).collect())
}

/// [`secretary_selection_dist_with_sample`] with the rule's own sample size.
pub fn secretary_selection_dist(keys: &[u32]) -> Result<Vec<f64>, OracleError> {
    match threshold_index(keys.len()) {
        Ok(r) => secretary_selection_dist_with_sample(keys, r),
        Err(_) => Ok(Vec::new()),
    }
}

/// Closed-form selection probability by rank (index 0 = best) for `m`
/// candidates and sample size `r`.
///
/// The candidate of rank `k` arriving at position `t > r` is taken exactly
/// when all `t-1` earlier arrivals are worse than it and the best of those
/// sits inside the sample, giving
/// `Σ_{t=r+1}^{m} (1/m) · C(m-k, t-1)/C(m-1, t-1) · r/(t-1)` for `r ≥ 1`.
/// With `r = 0` the first arrival is always taken.
pub fn rank_selection_probabilities(m: usize, r: usize) -> Vec<f64> {
    if m == 0 {
        return Vec::new();
    }
    if r == 0 {
        return vec![1.0 / m as f64; m];
    }
    (1..=m)
        .map(|k| {
            let worse = m - k;
            (r + 1..=m)
                .map(|t| {
                    let before = t - 1;
                    if before > worse {
                        return 0.0;
                    }
                    // C(worse, before) / C(m-1, before)
                    let ratio: f64 = (0..before)
                        .map(|i| (worse - i) as f64 / (m - 1 - i) as f64)
                        .product();
                    ratio * r as f64 / before as f64 / m as f64
                })
                .sum()
        })
        .collect()
}

/// Selection probabilities by rank for the rule's own sample size.
pub fn rule_rank_probabilities(m: usize) -> Vec<f64> {
    match threshold_index(m) {
        Ok(r) => rank_selection_probabilities(m, r),
        Err(_) => Vec::new(),
    }
}
