use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rules::{conditional_state, statistical_formula, PROBABILITY_FLOOR};
use super::{pointer_distribution, MeasurementModel};
use crate::distribution::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::hilbert::{DensityOperator, StateVector};

/// Outcome of a Monte Carlo run of two successive measurements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatabilityReport {
    pub seed: u64,
    pub trials: u64,
    /// Trials in which the second outcome equalled the first.
    pub agreements: u64,
    /// How often each first outcome (by index) was drawn.
    pub first_outcome_counts: Vec<u64>,
}

impl RepeatabilityReport {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.trials
    }

    pub fn first_outcome_frequencies(&self) -> Vec<f64> {
        self.first_outcome_counts
            .iter()
            .map(|&c| c as f64 / self.trials as f64)
            .collect()
    }
}

/// Generator used for every Monte Carlo draw in the crate: ChaCha8 seeded
/// through `seed_from_u64`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws from `dist` by inverse CDF over the outcome list in index order.
pub fn sample<L>(dist: &OutcomeDistribution<L>, rng: &mut impl Rng) -> usize {
    dist.sample_index(rng.random::<f64>(), PROBABILITY_FLOOR)
}

/// Monte Carlo check of repeatability.
///
/// Each trial draws the first outcome `n` from [`pointer_distribution`], then
/// draws a second measurement of the object observable from the
/// [`statistical_formula`] applied to the [`conditional_state`] for `n`
/// (apparatus prepared in the model's ready state). Conditional states are
/// computed once per outcome. Two draws per trial, in that order, from a
/// single [`seeded_rng`] stream.
pub fn verify_repeatability(
    model: &MeasurementModel,
    psi: &StateVector,
    trials: u64,
    seed: u64,
) -> Result<RepeatabilityReport> {
    if trials == 0 {
        return Err(Error::InvalidDistribution("trials must be positive".into()));
    }
    let first = pointer_distribution(model, psi)?;
    let rho = DensityOperator::pure(psi);
    let sigma = DensityOperator::pure(model.ready_state());
    let second: Vec<Option<OutcomeDistribution>> = first
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, &p)| {
            if p <= PROBABILITY_FLOOR {
                return Ok(None);
            }
            let conditioned = conditional_state(model, &rho, &sigma, n)?;
            statistical_formula(model.object_observable(), &conditioned).map(Some)
        })
        .collect::<Result<_>>()?;

    let mut rng = seeded_rng(seed);
    let mut counts = vec![0u64; first.len()];
    let mut agreements = 0;
    for _ in 0..trials {
        let n = sample(&first, &mut rng);
        let second_dist = second[n]
            .as_ref()
            .expect("sampling never selects outcomes at or below the floor");
        let m = sample(second_dist, &mut rng);
        counts[n] += 1;
        if m == n {
            agreements += 1;
        }
    }
    Ok(RepeatabilityReport {
        seed,
        trials,
        agreements,
        first_outcome_counts: counts,
    })
}
