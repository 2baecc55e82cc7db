//! Axiom and lemma checks behind the `check` command.

use std::f64::consts::E;

use serde::Serialize;

use super::HarnessError;
use crate::algorithm::Algorithm;
use crate::exact::{
    brute_opt, check_matroid_axioms, exact_free_order, exact_laminar, ExactReport,
    AXIOM_CHECK_MAX_N, EXACT_FREE_ORDER_MAX_N, PROBABILITY_TOLERANCE,
};
use crate::instance::Instance;
use crate::laminar::{IMPROVED_SAMPLE_PROBABILITY, SIMPLE_SAMPLE_PROBABILITY};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub instance: String,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Lines<'a> {
    instance: &'a str,
    out: Vec<CheckLine>,
}

impl Lines<'_> {
    fn push(&mut self, check: &'static str, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckLine {
            instance: self.instance.to_string(),
            check,
            passed,
            detail: detail.into(),
        });
    }

    fn min_bound(&mut self, check: &'static str, values: &[f64], bound: f64) {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let min = if values.is_empty() { bound } else { min };
        self.push(
            check,
            min >= bound - PROBABILITY_TOLERANCE,
            format!("min {min:.6} vs bound {bound:.6}"),
        );
    }

    fn expectation(&mut self, check: &'static str, r: &ExactReport, factor: f64) {
        let bound = r.opt_weight * factor;
        self.push(
            check,
            r.expected_weight >= bound - PROBABILITY_TOLERANCE,
            format!("E[w] {:.6} vs {bound:.6}", r.expected_weight),
        );
    }

    fn clean(&mut self, check: &'static str, r: &ExactReport) {
        let detail = match r.violations.first() {
            None => "no violations".to_string(),
            Some(v) => format!("{} violations, first {v:?}", r.violation_count),
        };
        self.push(check, r.is_clean(), detail);
    }
}

/// Runs every applicable exhaustive check on a small instance. Instances
/// above the enumeration limits only get the checks that fit.
pub fn check_instance(
    name: &str,
    instance: &Instance<f64>,
) -> Result<Vec<CheckLine>, HarnessError> {
    let mut lines = Lines {
        instance: name,
        out: Vec::new(),
    };
    let n = instance.n();
    if n <= AXIOM_CHECK_MAX_N {
        match check_matroid_axioms(instance.matroid())? {
            Ok(()) => lines.push("axioms", true, "independence axioms hold"),
            Err(w) => lines.push("axioms", false, format!("{w:?}")),
        }
        let greedy = {
            let mut g = instance.opt();
            g.sort_unstable();
            g
        };
        let brute = brute_opt(instance)?;
        lines.push(
            "greedy-optimal",
            greedy == brute,
            format!("greedy {greedy:?}, brute force {brute:?}"),
        );
    }
    if n > EXACT_FREE_ORDER_MAX_N {
        return Ok(lines.out);
    }

    let r = exact_free_order(instance)?;
    lines.clean("free-order-lemmas", &r);
    lines.min_bound("free-order-quarter", &r.opt_selection(), 0.25);
    lines.expectation("free-order-expectation", &r, 0.25);

    if instance.laminar().is_some() {
        let r = exact_laminar(
            instance,
            Algorithm::LaminarSimple,
            SIMPLE_SAMPLE_PROBABILITY,
        )?;
        lines.clean("laminar-simple-structure", &r);
        lines.min_bound(
            "laminar-simple-solitary",
            r.solitary_probability.as_deref().unwrap_or_default(),
            2.0 / 27.0,
        );
        lines.expectation("laminar-simple-expectation", &r, 2.0 / (27.0 * E));

        let r = exact_laminar(
            instance,
            Algorithm::LaminarImproved,
            IMPROVED_SAMPLE_PROBABILITY,
        )?;
        lines.clean("laminar-improved-structure", &r);
        lines.min_bound(
            "laminar-improved-z",
            r.expected_z.as_deref().unwrap_or_default(),
            1.0 / (3.0 * 3f64.sqrt()),
        );
        lines.expectation(
            "laminar-improved-expectation",
            &r,
            1.0 / Algorithm::LaminarImproved.competitive_bound(),
        );
        let (mass, zw) = (
            r.part_max_mass.unwrap_or(0.0),
            r.z_weighted_opt.unwrap_or(0.0),
        );
        lines.push(
            "laminar-improved-accounting",
            mass >= zw - PROBABILITY_TOLERANCE,
            format!("part maxima {mass:.6} vs Z-weighted {zw:.6}"),
        );
    }
    Ok(lines.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::laminar_four;

    #[test]
    fn laminar_four_passes_everything() {
        let lines = check_instance("laminar-four", &laminar_four()).unwrap();
        assert_eq!(lines.len(), 12);
        assert!(lines.iter().all(|l| l.passed), "{lines:#?}");
    }
}
