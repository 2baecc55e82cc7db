//! The free-order procedure: sample each element with probability 1/2, then
//! reveal the rest layer by layer along the spans of the heaviest sampled
//! prefixes, accepting only elements that would improve the sample optimum.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::matroid::{IndependenceTracker, Matroid};
use crate::weight::{ElementId, Weight};

/// The sample `A = {a_1, …, a_m}`, heaviest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePhase {
    in_sample: Vec<bool>,
    sorted: Vec<ElementId>,
}

impl SamplePhase {
    /// Puts every element in the sample independently with probability 1/2.
    pub fn draw<W: Weight, R: Rng + ?Sized>(instance: &Instance<W>, rng: &mut R) -> Self {
        let mask = (0..instance.n()).map(|_| rng.random_bool(0.5)).collect();
        SamplePhase::forced(instance, mask)
    }

    /// A fixed sample, for exact enumeration.
    pub fn forced<W: Weight>(instance: &Instance<W>, in_sample: Vec<bool>) -> Self {
        assert_eq!(
            in_sample.len(),
            instance.n(),
            "sample mask has the wrong length"
        );
        let sorted = instance
            .weight_order()
            .iter()
            .copied()
            .filter(|e| in_sample[e.index()])
            .collect();
        SamplePhase { in_sample, sorted }
    }

    pub fn from_ids<W: Weight>(instance: &Instance<W>, sample: &[ElementId]) -> Self {
        let mut mask = vec![false; instance.n()];
        sample.iter().for_each(|e| mask[e.index()] = true);
        SamplePhase::forced(instance, mask)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.in_sample[e.index()]
    }

    pub fn mask(&self) -> &[bool] {
        &self.in_sample
    }

    /// `a_1, …, a_m`.
    pub fn sorted(&self) -> &[ElementId] {
        &self.sorted
    }

    /// `A_i = {a_1, …, a_i}`.
    pub fn prefix(&self, i: usize) -> &[ElementId] {
        &self.sorted[..i]
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }
}

/// Reveal order for the unsampled elements.
///
/// `layers[i]` holds the elements of `span(A_{i+1}) \ span(A_i)` outside the
/// sample, ids ascending; `tail` holds `N \ span(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevealSchedule {
    pub layers: Vec<Vec<ElementId>>,
    pub tail: Vec<ElementId>,
}

impl RevealSchedule {
    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum::<usize>() + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn reveal_schedule<W: Weight>(instance: &Instance<W>, phase: &SamplePhase) -> RevealSchedule {
    let first_span = instance.matroid().span_layers(phase.sorted());
    let mut layers = vec![Vec::new(); phase.len()];
    let mut tail = Vec::new();
    for (f, layer) in first_span.into_iter().enumerate() {
        if phase.in_sample[f] {
            continue;
        }
        match layer {
            Some(i) => layers[i].push(ElementId::new(f)),
            None => tail.push(ElementId::new(f)),
        }
    }
    RevealSchedule { layers, tail }
}

/// Runs the selection phase against a given sample; returns the accepted
/// elements in acceptance order.
pub fn run_free_order<W: Weight>(instance: &Instance<W>, phase: &SamplePhase) -> Vec<ElementId> {
    let schedule = reveal_schedule(instance, phase);
    let mut tracker = instance.matroid().tracker();
    let mut accepted = Vec::new();
    for (layer, &a) in schedule.layers.iter().zip(phase.sorted()) {
        for &f in layer {
            if instance.beats(f, a) && tracker.try_add(f) {
                accepted.push(f);
            }
        }
    }
    for &f in &schedule.tail {
        if tracker.try_add(f) {
            accepted.push(f);
        }
    }
    accepted
}

/// Draws a sample and runs the procedure.
pub fn run_free_order_random<W: Weight, R: Rng + ?Sized>(
    instance: &Instance<W>,
    rng: &mut R,
) -> (SamplePhase, Vec<ElementId>) {
    let phase = SamplePhase::draw(instance, rng);
    let out = run_free_order(instance, &phase);
    (phase, out)
}

/// The naive variant that reveals the unsampled elements in uniformly random
/// order instead of along the span layers, still accepting only good
/// elements that keep the selection independent.
pub fn run_free_order_shuffled<W: Weight, R: Rng + ?Sized>(
    instance: &Instance<W>,
    phase: &SamplePhase,
    rng: &mut R,
) -> Vec<ElementId> {
    let first_span = instance.matroid().span_layers(phase.sorted());
    let mut rest: Vec<ElementId> = (0..instance.n())
        .map(ElementId::new)
        .filter(|&f| !phase.contains(f))
        .collect();
    rest.shuffle(rng);
    let mut tracker = instance.matroid().tracker();
    rest.into_iter()
        .filter(|&f| {
            let good = first_span[f.index()].is_none_or(|i| instance.beats(f, phase.sorted()[i]));
            good && tracker.try_add(f)
        })
        .collect()
}

/// A 1-based index into the weight order, or "never".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JIndex {
    At(usize),
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JIndices {
    /// First `j` with `f ∈ span((N_j ∩ A) − f)`.
    pub j1: JIndex,
    /// First `j` with `f ∈ span((N_j \ A) − f)`.
    pub j2: JIndex,
}

pub fn j_indices<W: Weight>(instance: &Instance<W>, in_sample: &[bool], f: ElementId) -> JIndices {
    let matroid = instance.matroid();
    let mut sampled = matroid.tracker();
    let mut unsampled = matroid.tracker();
    let (mut j1, mut j2) = (JIndex::Never, JIndex::Never);
    for (j, &e) in instance.weight_order().iter().enumerate() {
        if e == f {
            continue;
        }
        if in_sample[e.index()] {
            if j1 == JIndex::Never && sampled.try_add(e) && !sampled.can_add(f) {
                j1 = JIndex::At(j + 1);
            }
        } else if j2 == JIndex::Never && unsampled.try_add(e) && !unsampled.can_add(f) {
            j2 = JIndex::At(j + 1);
        }
        if j1 != JIndex::Never && j2 != JIndex::Never {
            break;
        }
    }
    JIndices { j1, j2 }
}
