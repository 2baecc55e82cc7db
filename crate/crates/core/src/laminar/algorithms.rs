use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::{
    consecutive_order, interval_partition, odd_even_parts, ConsecutiveOrder, LaminarError,
    PartitionScheme,
};
use crate::instance::Instance;
use crate::matroid::LaminarTree;
use crate::secretary::ThresholdRule;
use crate::weight::{ElementId, Weight};

/// Sample probability of the odd/even gap algorithm.
pub const SIMPLE_SAMPLE_PROBABILITY: f64 = 2.0 / 3.0;
/// Sample probability of the interval-partition algorithm, `1/√3`.
pub const IMPROVED_SAMPLE_PROBABILITY: f64 = 0.577_350_269_189_625_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Order in which the unsampled elements reach the per-part rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase2Order {
    /// The remaining arrivals of the uniformly random permutation.
    #[default]
    Random,
    /// Increasing element id.
    AdversarialId,
    /// Lightest first.
    Reversed,
    /// Everything outside the offline optimum first, then the optimum, both
    /// in id order.
    OptLast,
}

/// Everything a single laminar run decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarOutcome {
    pub sample: Vec<bool>,
    pub opt_sample: Vec<ElementId>,
    pub coin: Option<Parity>,
    pub scheme: PartitionScheme,
    pub selected: Vec<ElementId>,
}

/// A laminar instance together with its consecutive numbering, reusable
/// across trials.
#[derive(Debug, Clone)]
pub struct LaminarSecretary<'a, W> {
    instance: &'a Instance<W>,
    tree: &'a LaminarTree,
    order: ConsecutiveOrder,
}

impl<'a, W: Weight> LaminarSecretary<'a, W> {
    pub fn new(instance: &'a Instance<W>) -> Result<Self, LaminarError> {
        let tree = instance
            .laminar()
            .ok_or_else(|| LaminarError::NotLaminar(instance.matroid().kind()))?;
        Ok(LaminarSecretary {
            instance,
            tree,
            order: consecutive_order(tree),
        })
    }

    pub fn instance(&self) -> &Instance<W> {
        self.instance
    }

    pub fn tree(&self) -> &LaminarTree {
        self.tree
    }

    pub fn order(&self) -> &ConsecutiveOrder {
        &self.order
    }

    /// Scheme of the odd/even gap algorithm for a fixed sample and coin.
    pub fn plan_simple(&self, sample: &[bool], coin: Parity) -> (Vec<ElementId>, PartitionScheme) {
        let opt_sample = self.instance.greedy_in_mask(sample);
        let scheme = match odd_even_parts(&self.order, sample, &opt_sample) {
            Ok((odd, even)) => match coin {
                Parity::Odd => odd,
                Parity::Even => even,
            },
            Err(_) => PartitionScheme::whole(&self.order, sample),
        };
        (opt_sample, scheme)
    }

    /// Scheme of the interval-partition algorithm for a fixed sample.
    pub fn plan_improved(&self, sample: &[bool]) -> (Vec<ElementId>, PartitionScheme) {
        let opt_sample = self.instance.greedy_in_mask(sample);
        let scheme = interval_partition(self.tree, &self.order, &opt_sample)
            .expect("the sample optimum is independent")
            .without_sample(sample);
        (opt_sample, scheme)
    }

    /// Routes arrivals to one threshold rule per part; arrivals outside every
    /// part are discarded. Returns the union of the rules' selections.
    pub fn run_phase_two(
        &self,
        scheme: &PartitionScheme,
        arrivals: impl IntoIterator<Item = ElementId>,
    ) -> Vec<ElementId> {
        let lookup = scheme.part_lookup(self.instance.n());
        let mut rules: Vec<ThresholdRule> = scheme
            .parts
            .iter()
            .map(|p| ThresholdRule::new(p.len()).expect("parts are non-empty"))
            .collect();
        let mut selected = Vec::new();
        for e in arrivals {
            if let Some(p) = lookup[e.index()] {
                if rules[p as usize].observe(e, self.instance.priority(e)) {
                    selected.push(e);
                }
            }
        }
        selected
    }

    /// Draws a uniformly random arrival order and a binomial prefix length;
    /// returns the sample mask and the phase-two arrivals in the requested
    /// order.
    fn arrivals<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        probability: f64,
        phase2: Phase2Order,
    ) -> Result<(Vec<bool>, Vec<ElementId>), LaminarError> {
        if !(probability > 0.0 && probability < 1.0) {
            return Err(LaminarError::InvalidProbability(probability));
        }
        let n = self.instance.n();
        let mut arrivals: Vec<ElementId> = (0..n).map(ElementId::new).collect();
        arrivals.shuffle(rng);
        let k = Binomial::new(n as u64, probability)
            .expect("probability checked above")
            .sample(rng) as usize;
        let mut sample = vec![false; n];
        arrivals[..k].iter().for_each(|e| sample[e.index()] = true);
        let mut rest = arrivals.split_off(k);
        match phase2 {
            Phase2Order::Random => {}
            Phase2Order::AdversarialId => rest.sort_unstable(),
            Phase2Order::Reversed => {
                rest.sort_unstable_by_key(|&e| std::cmp::Reverse(self.instance.position(e)))
            }
            Phase2Order::OptLast => {
                let mut in_opt = vec![false; n];
                self.instance
                    .opt()
                    .iter()
                    .for_each(|e| in_opt[e.index()] = true);
                rest.sort_unstable_by_key(|&e| (in_opt[e.index()], e));
            }
        }
        Ok((sample, rest))
    }

    /// Odd/even gap algorithm with sample probability 2/3.
    pub fn run_simple<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        phase2: Phase2Order,
    ) -> Result<LaminarOutcome, LaminarError> {
        self.run_simple_with(rng, SIMPLE_SAMPLE_PROBABILITY, phase2)
    }

    /// Odd/even gap algorithm with sample probability `q`.
    pub fn run_simple_with<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        q: f64,
        phase2: Phase2Order,
    ) -> Result<LaminarOutcome, LaminarError> {
        let (sample, rest) = self.arrivals(rng, q, phase2)?;
        let coin = if rng.random_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        };
        let (opt_sample, scheme) = self.plan_simple(&sample, coin);
        let coin = (!opt_sample.is_empty()).then_some(coin);
        let selected = self.run_phase_two(&scheme, rest);
        Ok(LaminarOutcome {
            sample,
            opt_sample,
            coin,
            scheme,
            selected,
        })
    }

    /// Interval-partition algorithm with sample probability `q`.
    pub fn run_improved<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        q: f64,
        phase2: Phase2Order,
    ) -> Result<LaminarOutcome, LaminarError> {
        let (sample, rest) = self.arrivals(rng, q, phase2)?;
        let (opt_sample, scheme) = self.plan_improved(&sample);
        let selected = self.run_phase_two(&scheme, rest);
        Ok(LaminarOutcome {
            sample,
            opt_sample,
            coin: None,
            scheme,
            selected,
        })
    }
}

/// One run of the odd/even gap algorithm in random arrival order.
pub fn run_simple_laminar<W: Weight, R: Rng + ?Sized>(
    instance: &Instance<W>,
    rng: &mut R,
) -> Result<Vec<ElementId>, LaminarError> {
    Ok(LaminarSecretary::new(instance)?
        .run_simple(rng, Phase2Order::Random)?
        .selected)
}

/// One run of the interval-partition algorithm in random arrival order.
pub fn run_improved_laminar<W: Weight, R: Rng + ?Sized>(
    instance: &Instance<W>,
    rng: &mut R,
    q: f64,
) -> Result<Vec<ElementId>, LaminarError> {
    Ok(LaminarSecretary::new(instance)?
        .run_improved(rng, q, Phase2Order::Random)?
        .selected)
}
