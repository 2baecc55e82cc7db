//! Monte Carlo runner.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::algorithm::Algorithm;
use crate::free_order::{run_free_order, run_free_order_shuffled, SamplePhase};
use crate::instance::Instance;
use crate::laminar::{
    LaminarSecretary, Phase2Order, IMPROVED_SAMPLE_PROBABILITY, SIMPLE_SAMPLE_PROBABILITY,
};
use crate::matroid::Matroid;
use crate::weight::{ElementId, Weight};

pub const DEFAULT_TRIALS: u64 = 10_000;
const TRIAL_CHUNK: u64 = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Label copied into reports.
    pub instance: String,
    pub algorithm: Algorithm,
    pub trials: u64,
    pub seed: u64,
    /// Sample probability override for the laminar algorithms.
    pub q: Option<f64>,
    pub phase2_order: Phase2Order,
    /// Free order only: reveal unsampled elements in random order instead of
    /// along the span layers.
    pub naive_free_order: bool,
}

impl ExperimentConfig {
    pub fn new(instance: impl Into<String>, algorithm: Algorithm) -> Self {
        ExperimentConfig {
            instance: instance.into(),
            algorithm,
            trials: DEFAULT_TRIALS,
            seed: 0,
            q: None,
            phase2_order: Phase2Order::Random,
            naive_free_order: false,
        }
    }

    pub fn sample_probability(&self) -> f64 {
        match self.algorithm {
            Algorithm::FreeOrder => 0.5,
            Algorithm::LaminarSimple => self.q.unwrap_or(SIMPLE_SAMPLE_PROBABILITY),
            Algorithm::LaminarImproved => self.q.unwrap_or(IMPROVED_SAMPLE_PROBABILITY),
        }
    }

    pub fn validate<W: Weight>(&self, instance: &Instance<W>) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if let Some(q) = self.q {
            if !(q > 0.0 && q < 1.0) {
                return Err(HarnessError::Config(format!("q = {q} is outside (0, 1)")));
            }
        }
        if self.algorithm.needs_laminar() && instance.laminar().is_none() {
            return Err(HarnessError::Incompatible {
                algorithm: self.algorithm,
                matroid: instance.matroid().kind(),
            });
        }
        Ok(())
    }
}

/// Generator for trial `trial`: the master seed picks the key, the trial
/// index picks the ChaCha stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub instance: String,
    pub algorithm: Algorithm,
    pub trials: u64,
    pub seed: u64,
    pub mean_weight: f64,
    /// Sample standard deviation of the per-trial weights.
    pub std_weight: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub opt_weight: f64,
    /// `opt_weight / mean_weight`; absent when nothing was ever selected.
    pub ratio: Option<f64>,
    /// Fraction of trials selecting each element.
    pub frequencies: Vec<f64>,
    pub wall_time_secs: f64,
}

impl RunStats {
    pub fn standard_error(&self) -> f64 {
        self.std_weight / (self.trials as f64).sqrt()
    }
}

/// Runs one trial and returns the selected elements.
pub fn run_one<W: Weight>(
    instance: &Instance<W>,
    laminar: Option<&LaminarSecretary<'_, W>>,
    config: &ExperimentConfig,
    trial: u64,
) -> Result<Vec<ElementId>, HarnessError> {
    let mut rng = trial_rng(config.seed, trial);
    Ok(match (config.algorithm, laminar) {
        (Algorithm::FreeOrder, _) => {
            let phase = SamplePhase::draw(instance, &mut rng);
            if config.naive_free_order {
                run_free_order_shuffled(instance, &phase, &mut rng)
            } else {
                run_free_order(instance, &phase)
            }
        }
        (Algorithm::LaminarSimple, Some(ls)) => match config.q {
            None => ls.run_simple(&mut rng, config.phase2_order)?.selected,
            Some(q) => {
                ls.run_simple_with(&mut rng, q, config.phase2_order)?
                    .selected
            }
        },
        (Algorithm::LaminarImproved, Some(ls)) => {
            ls.run_improved(&mut rng, config.sample_probability(), config.phase2_order)?
                .selected
        }
        (algorithm, None) => {
            return Err(HarnessError::Incompatible {
                algorithm,
                matroid: instance.matroid().kind(),
            })
        }
    })
}

#[derive(Default)]
struct Accumulator {
    trials: u64,
    sum: f64,
    sum_sq: f64,
    counts: Vec<u64>,
}

/// Runs `config.trials` independent trials in parallel. Chunks of trials are
/// reduced sequentially and merged in chunk order, so results do not depend
/// on the thread count.
pub fn run_trials<W: Weight>(
    instance: &Instance<W>,
    config: &ExperimentConfig,
) -> Result<RunStats, HarnessError> {
    config.validate(instance)?;
    let start = Instant::now();
    let laminar = if config.algorithm.needs_laminar() {
        Some(LaminarSecretary::new(instance)?)
    } else {
        None
    };
    let n = instance.n();
    let chunks: Vec<Result<Accumulator, HarnessError>> = (0..config.trials.div_ceil(TRIAL_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = Accumulator {
                counts: vec![0; n],
                ..Accumulator::default()
            };
            for trial in c * TRIAL_CHUNK..((c + 1) * TRIAL_CHUNK).min(config.trials) {
                let selected = run_one(instance, laminar.as_ref(), config, trial)?;
                if !instance.matroid().independent_unchecked(&selected) {
                    return Err(HarnessError::DependentOutput { trial, selected });
                }
                let w = instance.total_weight_f64(&selected);
                acc.trials += 1;
                acc.sum += w;
                acc.sum_sq += w * w;
                selected.iter().for_each(|e| acc.counts[e.index()] += 1);
            }
            Ok(acc)
        })
        .collect();

    let mut total = Accumulator {
        counts: vec![0; n],
        ..Accumulator::default()
    };
    for chunk in chunks {
        let chunk = chunk?;
        total.trials += chunk.trials;
        total.sum += chunk.sum;
        total.sum_sq += chunk.sum_sq;
        total
            .counts
            .iter_mut()
            .zip(&chunk.counts)
            .for_each(|(t, c)| *t += c);
    }
    let t = total.trials as f64;
    let mean = total.sum / t;
    let var = if total.trials > 1 {
        ((total.sum_sq - t * mean * mean) / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    let std = var.sqrt();
    let half = 1.96 * std / t.sqrt();
    let opt_weight = instance.total_weight_f64(&instance.opt());
    Ok(RunStats {
        instance: config.instance.clone(),
        algorithm: config.algorithm,
        trials: total.trials,
        seed: config.seed,
        mean_weight: mean,
        std_weight: std,
        ci_low: mean - half,
        ci_high: mean + half,
        opt_weight,
        ratio: (mean > 0.0).then(|| opt_weight / mean),
        frequencies: total.counts.iter().map(|&c| c as f64 / t).collect(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}
