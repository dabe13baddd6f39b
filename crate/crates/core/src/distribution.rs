//! Discrete outcome distributions shared by the quantum and classical layers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Probabilities below zero by at most this much are treated as roundoff
/// and clamped; anything further out is an error.
pub const PROBABILITY_ROUNDOFF: f64 = 1e-12;

/// Allowed deviation of a distribution's total mass from one.
pub const TOTAL_MASS_TOL: f64 = 1e-10;

fn clamp_probability(index: usize, value: f64) -> Result<f64> {
    if !value.is_finite() || !(-PROBABILITY_ROUNDOFF..=1.0 + PROBABILITY_ROUNDOFF).contains(&value)
    {
        return Err(Error::InvalidProbability { index, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Probabilities over an ordered list of outcomes. Outcomes are eigenvalues
/// for quantum observables and string labels for classical variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution<L = f64> {
    outcomes: Vec<L>,
    probabilities: Vec<f64>,
}

impl<L> OutcomeDistribution<L> {
    /// Clamps roundoff-level negatives and checks total mass against `1e-10`.
    pub fn new(outcomes: Vec<L>, probabilities: Vec<f64>) -> Result<Self> {
        Self::with_mass_tolerance(outcomes, probabilities, TOTAL_MASS_TOL)
    }

    pub fn with_mass_tolerance(
        outcomes: Vec<L>,
        probabilities: Vec<f64>,
        mass_tol: f64,
    ) -> Result<Self> {
        if outcomes.len() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                context: "outcome distribution",
                expected: outcomes.len(),
                found: probabilities.len(),
            });
        }
        if outcomes.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        let probabilities = probabilities
            .into_iter()
            .enumerate()
            .map(|(i, p)| clamp_probability(i, p))
            .collect::<Result<Vec<_>>>()?;
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > mass_tol {
            return Err(Error::InvalidDistribution(format!(
                "total probability {total} differs from 1"
            )));
        }
        Ok(Self {
            outcomes,
            probabilities,
        })
    }

    pub fn outcomes(&self) -> &[L] {
        &self.outcomes
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Largest absolute difference between matching probabilities.
    pub fn max_abs_diff<M>(&self, other: &OutcomeDistribution<M>) -> f64 {
        assert_eq!(self.len(), other.len(), "distribution length mismatch");
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Inverse-CDF lookup in index order for `u ∈ [0, 1)`. Outcomes whose
    /// probability does not exceed `floor` are never returned.
    pub fn sample_index(&self, u: f64, floor: f64) -> usize {
        let total: f64 = self.probabilities.iter().filter(|&&p| p > floor).sum();
        let target = u * total;
        let mut acc = 0.0;
        let mut last = 0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            if p <= floor {
                continue;
            }
            acc += p;
            last = i;
            if target < acc {
                return i;
            }
        }
        last
    }
}

/// Joint probabilities `table[row][col]` over two outcome lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointOutcomeDistribution {
    row_outcomes: Vec<f64>,
    col_outcomes: Vec<f64>,
    table: Vec<Vec<f64>>,
}

impl JointOutcomeDistribution {
    pub fn new(
        row_outcomes: Vec<f64>,
        col_outcomes: Vec<f64>,
        table: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if table.len() != row_outcomes.len() {
            return Err(Error::DimensionMismatch {
                context: "joint table rows",
                expected: row_outcomes.len(),
                found: table.len(),
            });
        }
        let mut clamped = Vec::with_capacity(table.len());
        for (r, row) in table.into_iter().enumerate() {
            if row.len() != col_outcomes.len() {
                return Err(Error::DimensionMismatch {
                    context: "joint table columns",
                    expected: col_outcomes.len(),
                    found: row.len(),
                });
            }
            clamped.push(
                row.into_iter()
                    .enumerate()
                    .map(|(c, p)| clamp_probability(r * col_outcomes.len() + c, p))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let total: f64 = clamped.iter().flatten().sum();
        if (total - 1.0).abs() > TOTAL_MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "joint total probability {total} differs from 1"
            )));
        }
        Ok(Self {
            row_outcomes,
            col_outcomes,
            table: clamped,
        })
    }

    pub fn row_outcomes(&self) -> &[f64] {
        &self.row_outcomes
    }

    pub fn col_outcomes(&self) -> &[f64] {
        &self.col_outcomes
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.table[row][col]
    }

    /// Total probability on entries with `row != col`.
    pub fn off_diagonal_mass(&self) -> f64 {
        self.table
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().filter(move |(c, _)| *c != r))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        self.table.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        (0..self.col_outcomes.len())
            .map(|c| self.table.iter().map(|row| row[c]).sum())
            .collect()
    }
}
