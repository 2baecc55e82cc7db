//! The classical single-choice secretary rule: skip the first `⌊m/e⌋`
//! arrivals, then take the first one that beats all of them.

use std::f64::consts::E;

use thiserror::Error;

use crate::weight::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SecretaryError {
    #[error("a secretary rule needs at least one candidate")]
    EmptyStream,
    #[error("sample size {r} must be smaller than the stream length {n}")]
    SampleTooLarge { r: usize, n: usize },
}

/// Number of arrivals observed before the rule may accept: `⌊m/e⌋`.
pub fn threshold_index(m: usize) -> Result<usize, SecretaryError> {
    if m == 0 {
        return Err(SecretaryError::EmptyStream);
    }
    Ok((m as f64 / E).floor() as usize)
}

/// Probability that the rule with sample size `r` picks the maximum of `n`
/// candidates arriving in uniformly random order.
pub fn success_probability(r: usize, n: usize) -> Result<f64, SecretaryError> {
    if r >= n {
        return Err(SecretaryError::SampleTooLarge { r, n });
    }
    if r == 0 {
        return Ok(1.0 / n as f64);
    }
    let tail: f64 = (r..n).map(|j| 1.0 / j as f64).sum();
    Ok(r as f64 / n as f64 * tail)
}

/// Online state of one threshold rule over a stream of known length.
///
/// Keys are compared with `>` only; a larger key is a better candidate.
#[derive(Debug, Clone)]
pub struct ThresholdRule {
    len: usize,
    sample: usize,
    seen: usize,
    best_sampled: Option<u32>,
    selected: Option<ElementId>,
}

impl ThresholdRule {
    pub fn new(len: usize) -> Result<Self, SecretaryError> {
        Ok(ThresholdRule::with_sample(len, threshold_index(len)?))
    }

    /// A rule with an explicit sample size instead of `⌊len/e⌋`.
    pub fn with_sample(len: usize, sample: usize) -> Self {
        ThresholdRule {
            len,
            sample,
            seen: 0,
            best_sampled: None,
            selected: None,
        }
    }

    pub fn sample_size(&self) -> usize {
        self.sample
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn selected(&self) -> Option<ElementId> {
        self.selected
    }

    /// Feeds the next arrival. Returns `true` if it is accepted.
    pub fn observe(&mut self, id: ElementId, key: u32) -> bool {
        debug_assert!(self.seen < self.len, "more arrivals than announced");
        self.seen += 1;
        if self.selected.is_some() {
            return false;
        }
        if self.seen <= self.sample {
            self.best_sampled = Some(self.best_sampled.map_or(key, |b| b.max(key)));
            return false;
        }
        if self.best_sampled.is_none_or(|b| key > b) {
            self.selected = Some(id);
            return true;
        }
        false
    }
}

/// Runs the rule over a complete stream of `(id, key)` arrivals.
pub fn run_threshold_rule(stream: &[(ElementId, u32)]) -> Option<ElementId> {
    let mut rule = ThresholdRule::new(stream.len()).ok()?;
    for &(id, key) in stream {
        rule.observe(id, key);
    }
    rule.selected()
}
