use serde::{Deserialize, Serialize};

use super::subsets::{mask_to_ids, Mask};
use super::OracleError;
use crate::matroid::Matroid;
use crate::weight::ElementId;

pub const AXIOM_CHECK_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomKind {
    EmptySetDependent,
    DownwardClosure,
    Exchange,
}

/// A pair of sets witnessing a failed axiom. For downward closure `larger` is
/// independent and its subset `smaller` is not; for exchange both are
/// independent, `|larger| > |smaller|`, and no element of `larger \ smaller`
/// extends `smaller`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub kind: AxiomKind,
    pub larger: Vec<ElementId>,
    pub smaller: Vec<ElementId>,
}

/// Exhaustively checks the independence axioms of an oracle on `n` elements.
pub fn axiom_check(
    n: usize,
    independent: impl Fn(&[ElementId]) -> bool,
) -> Result<Result<(), AxiomViolation>, OracleError> {
    if n > AXIOM_CHECK_MAX_N {
        return Err(OracleError::TooLarge {
            n,
            max: AXIOM_CHECK_MAX_N,
        });
    }
    let size = 1usize << n;
    let table: Vec<bool> = (0..size as Mask)
        .map(|m| independent(&mask_to_ids(m)))
        .collect();
    let violation = |kind, larger: Mask, smaller: Mask| AxiomViolation {
        kind,
        larger: mask_to_ids(larger),
        smaller: mask_to_ids(smaller),
    };

    if !table[0] {
        return Ok(Err(violation(AxiomKind::EmptySetDependent, 0, 0)));
    }
    // Closure under removing single elements implies closure under subsets.
    for m in 0..size as Mask {
        if !table[m as usize] {
            continue;
        }
        let mut bits = m;
        while bits != 0 {
            let sub = m & !(bits & bits.wrapping_neg());
            bits &= bits - 1;
            if !table[sub as usize] {
                return Ok(Err(violation(AxiomKind::DownwardClosure, m, sub)));
            }
        }
    }
    // Given downward closure, exchange for |I| = |J| + 1 implies it in general.
    let extendable: Vec<Mask> = (0..size as Mask)
        .map(|j| {
            if !table[j as usize] {
                return 0;
            }
            (0..n as u32)
                .filter(|&f| j >> f & 1 == 0 && table[(j | 1 << f) as usize])
                .fold(0, |acc, f| acc | 1 << f)
        })
        .collect();
    for j in 0..size as Mask {
        if !table[j as usize] {
            continue;
        }
        let want = j.count_ones() + 1;
        for i in 0..size as Mask {
            if i.count_ones() == want && table[i as usize] && (i & !j) & extendable[j as usize] == 0
            {
                return Ok(Err(violation(AxiomKind::Exchange, i, j)));
            }
        }
    }
    Ok(Ok(()))
}

/// [`axiom_check`] against a matroid's own independence oracle.
pub fn check_matroid_axioms<M: Matroid>(m: &M) -> Result<Result<(), AxiomViolation>, OracleError> {
    axiom_check(m.ground_size(), |s| m.independent_unchecked(s))
}
