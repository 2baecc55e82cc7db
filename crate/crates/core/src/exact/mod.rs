//! Exhaustive oracles for small instances.
//!
//! These enumerate every sample set (and coin outcome) with its exact
//! probability and combine that with closed-form or enumerated secretary
//! selection distributions. Spans are recomputed from the rank function and
//! partitions from their set definitions, independently of the algorithm
//! modules; where an algorithm module produces the same object, the two are
//! compared and disagreements are logged as violations.

mod axioms;
mod free_order;
mod laminar;
mod secretary;
mod subsets;

pub use axioms::{axiom_check, check_matroid_axioms, AxiomKind, AxiomViolation, AXIOM_CHECK_MAX_N};
pub use free_order::{exact_free_order, EXACT_FREE_ORDER_MAX_N};
pub use laminar::{exact_laminar, EXACT_LAMINAR_MAX_N};
pub use secretary::{
    for_each_permutation, rank_selection_probabilities, rule_rank_probabilities,
    secretary_selection_dist, secretary_selection_dist_with_sample, ENUMERATION_MAX_PART,
};
pub use subsets::{
    brute_opt, ids_to_mask, mask_to_bools, mask_to_ids, submasks, Mask, SubsetTables,
    BRUTE_OPT_MAX_N,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithm::Algorithm;
use crate::laminar::{LaminarError, Parity};
use crate::weight::ElementId;

/// Comparison tolerance for exact probabilities.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// At most this many violations are kept verbatim; the rest are counted.
const MAX_LOGGED_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("exhaustive enumeration over {n} elements exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{0} has no laminar exact oracle")]
    Unsupported(Algorithm),
    #[error(transparent)]
    Laminar(#[from] LaminarError),
}

/// A failed lemma or cross-check, with the sample set that exposed it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `f ∉ A` and `j1 ≤ j2`, yet `f` was not selected.
    UnselectedDespiteOrder {
        sample: Vec<ElementId>,
        element: ElementId,
    },
    /// Neither `S` nor its complement has `j1 ≤ j2`.
    ComplementSymmetry {
        sample: Vec<ElementId>,
        element: ElementId,
    },
    /// An accepted element is spanned by heavier sampled elements.
    AcceptedNotGood {
        sample: Vec<ElementId>,
        element: ElementId,
    },
    /// The procedure's own j-indices disagree with the rank-based ones.
    JIndexMismatch {
        sample: Vec<ElementId>,
        element: ElementId,
    },
    DependentOutput {
        sample: Vec<ElementId>,
        output: Vec<ElementId>,
    },
    DependentTransversal {
        sample: Vec<ElementId>,
        transversal: Vec<ElementId>,
    },
    /// A part of the interval partition is not a block around its anchor.
    NonIntervalPart {
        sample: Vec<ElementId>,
        anchor: ElementId,
    },
    /// Some laminar set meeting the anchor set is not covered by its anchors' parts.
    Coverage {
        sample: Vec<ElementId>,
        set: Vec<ElementId>,
    },
    /// The algorithm module built a different partition than the definition.
    SchemeMismatch {
        sample: Vec<ElementId>,
        coin: Option<Parity>,
    },
    /// Per-part maxima fell short of the Z-weighted optimum.
    AccountingGap {
        sample: Vec<ElementId>,
        part_max: f64,
        z_weighted: f64,
    },
}

/// Exact expectations for one algorithm on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub algorithm: Algorithm,
    pub n: usize,
    /// Sampling probability (laminar algorithms).
    pub q: Option<f64>,
    pub opt: Vec<ElementId>,
    pub opt_weight: f64,
    /// `Pr[e selected]` for every element.
    pub selection_probability: Vec<f64>,
    pub expected_weight: f64,
    /// `opt_weight / expected_weight`; absent when nothing is ever selected.
    pub ratio: Option<f64>,
    /// Free order: `Pr[j1 ≤ j2]` for each element of `opt`.
    pub ordered_probability: Option<Vec<f64>>,
    /// Odd/even algorithm: probability each element of `opt` is alone in its part.
    pub solitary_probability: Option<Vec<f64>>,
    /// Interval algorithm: `E[Z(f)]` for each element of `opt`.
    pub expected_z: Option<Vec<f64>>,
    /// Interval algorithm: `E[Σ max w over parts meeting opt]`.
    pub part_max_mass: Option<f64>,
    /// Interval algorithm: `Σ w(f)·E[Z(f)]`.
    pub z_weighted_opt: Option<f64>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl ExactReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    /// `Pr[f selected]` for each element of `opt`, aligned with `opt`.
    pub fn opt_selection(&self) -> Vec<f64> {
        self.opt
            .iter()
            .map(|e| self.selection_probability[e.index()])
            .collect()
    }
}

/// Violation sink that keeps a bounded log.
#[derive(Debug, Clone, Default)]
pub(crate) struct ViolationLog {
    pub count: u64,
    pub kept: Vec<Violation>,
}

impl ViolationLog {
    pub fn push(&mut self, v: Violation) {
        self.count += 1;
        if self.kept.len() < MAX_LOGGED_VIOLATIONS {
            self.kept.push(v);
        }
    }

    pub fn merge(&mut self, other: ViolationLog) {
        self.count += other.count;
        for v in other.kept {
            if self.kept.len() < MAX_LOGGED_VIOLATIONS {
                self.kept.push(v);
            }
        }
    }
}

/// Number of sample masks handled per parallel work item.
pub(crate) const CHUNK: u32 = 256;

pub(crate) fn chunk_ranges(total: u64) -> Vec<std::ops::Range<u64>> {
    (0..total.div_ceil(CHUNK as u64))
        .map(|c| c * CHUNK as u64..((c + 1) * CHUNK as u64).min(total))
        .collect()
}
