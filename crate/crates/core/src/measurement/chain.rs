use nalgebra::DVector;
use num_complex::Complex64;

use super::model::apparatus_blocks;
use super::MeasurementModel;
use crate::distribution::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::hilbert::{tensor, ComplexMatrix, StateVector};

/// A measurement model followed by a second apparatus that reads the first
/// apparatus's pointer.
///
/// The second measuring unitary acts on `(object ⊗ apparatus₁) ⊗ apparatus₂`
/// as `U₂ = Σₙ (1 ⊗ |ξₙ⟩⟨ξₙ|) ⊗ V′ₙ + (1 ⊗ P_off) ⊗ 1`, where `V′ₙξ′ = ξ′ₙ`
/// and `P_off` projects onto the part of apparatus₁ not spanned by the
/// pointer vectors.
#[derive(Debug, Clone)]
pub struct ChainModel {
    first: MeasurementModel,
    second_ready_state: StateVector,
    second_pointer_eigenvectors: Vec<StateVector>,
    second_unitary: ComplexMatrix,
}

/// Couples a second apparatus to `model`'s pointer observable.
pub fn chain_extend(
    model: &MeasurementModel,
    second_pointer_eigenvectors: Vec<StateVector>,
    second_ready_state: StateVector,
) -> Result<ChainModel> {
    let d = model.outcome_count();
    if second_pointer_eigenvectors.len() != d {
        return Err(Error::DimensionMismatch {
            context: "second pointer eigenvector count",
            expected: d,
            found: second_pointer_eigenvectors.len(),
        });
    }
    if second_ready_state.dim() < d {
        return Err(Error::DimensionMismatch {
            context: "second apparatus dimension (must be at least the outcome count)",
            expected: d,
            found: second_ready_state.dim(),
        });
    }
    let blocks = apparatus_blocks(&second_ready_state, &second_pointer_eigenvectors)?;
    let m1 = model.apparatus_dim();
    let m2 = second_ready_state.dim();
    let id_object = ComplexMatrix::identity(model.object_dim());

    let mut covered = ComplexMatrix::zeros(m1);
    let mut second_unitary = ComplexMatrix::zeros(model.object_dim() * m1 * m2);
    for (xi, v) in model.pointer_eigenvectors().iter().zip(&blocks) {
        covered = covered + xi.projector();
        second_unitary = second_unitary + tensor(&tensor(&id_object, &xi.projector()), v);
    }
    let off = ComplexMatrix::identity(m1) - covered;
    second_unitary =
        second_unitary + tensor(&tensor(&id_object, &off), &ComplexMatrix::identity(m2));

    Ok(ChainModel {
        first: model.clone(),
        second_ready_state,
        second_pointer_eigenvectors,
        second_unitary,
    })
}

impl ChainModel {
    pub fn first(&self) -> &MeasurementModel {
        &self.first
    }

    pub fn second_ready_state(&self) -> &StateVector {
        &self.second_ready_state
    }

    pub fn second_pointer_eigenvectors(&self) -> &[StateVector] {
        &self.second_pointer_eigenvectors
    }

    /// `U₂` on `(object ⊗ apparatus₁) ⊗ apparatus₂`.
    pub fn second_unitary(&self) -> &ComplexMatrix {
        &self.second_unitary
    }

    pub fn second_apparatus_dim(&self) -> usize {
        self.second_ready_state.dim()
    }

    /// `U₂ (U ⊗ 1)(ψ ⊗ ξ ⊗ ξ′)`.
    pub fn final_state(&self, psi: &StateVector) -> Result<StateVector> {
        let after_first = self.first.evolve(psi)?;
        after_first
            .tensor(&self.second_ready_state)
            .evolve(&self.second_unitary)
    }

    /// `Σₙ cₙ φₙ ⊗ ξₙ ⊗ ξ′ₙ`.
    pub fn correlated_state(&self, psi: &StateVector) -> Result<StateVector> {
        let coefficients = self.first.coefficients(psi)?;
        let dim =
            self.first.object_dim() * self.first.apparatus_dim() * self.second_apparatus_dim();
        let v = self
            .first
            .object_basis()
            .iter()
            .zip(self.first.pointer_eigenvectors())
            .zip(&self.second_pointer_eigenvectors)
            .zip(&coefficients)
            .fold(
                DVector::<Complex64>::zeros(dim),
                |acc, (((phi, xi), xi2), c)| acc + phi.tensor(xi).tensor(xi2).as_vector() * *c,
            );
        Ok(StateVector::wrap(v))
    }

    /// `‖final_state(ψ) − Σₙ cₙ φₙ⊗ξₙ⊗ξ′ₙ‖`.
    pub fn final_state_residual(&self, psi: &StateVector) -> Result<f64> {
        Ok(self
            .final_state(psi)?
            .distance(&self.correlated_state(psi)?))
    }

    /// `table[n₂][n₁][k] = |⟨φₖ⊗ξₙ₁⊗ξ′ₙ₂|Ψ₂⟩|²`: second pointer × first
    /// pointer × object outcome.
    pub fn outcome_table(&self, psi: &StateVector) -> Result<Vec<Vec<Vec<f64>>>> {
        let big_psi = self.final_state(psi)?;
        Ok(self
            .second_pointer_eigenvectors
            .iter()
            .map(|xi2| {
                self.first
                    .pointer_eigenvectors()
                    .iter()
                    .map(|xi1| {
                        self.first
                            .object_basis()
                            .iter()
                            .map(|phi| phi.tensor(xi1).tensor(xi2).inner(&big_psi).norm_sqr())
                            .collect()
                    })
                    .collect()
            })
            .collect())
    }

    /// Total probability in the outcome table away from the diagonal `(n,n,n)`.
    pub fn off_support_mass(&self, psi: &StateVector) -> Result<f64> {
        let table = self.outcome_table(psi)?;
        let mut mass = 0.0;
        for (a, plane) in table.iter().enumerate() {
            for (b, row) in plane.iter().enumerate() {
                for (c, p) in row.iter().enumerate() {
                    if !(a == b && b == c) {
                        mass += p;
                    }
                }
            }
        }
        Ok(mass)
    }

    /// Distribution of the second apparatus's pointer reading.
    pub fn second_pointer_distribution(&self, psi: &StateVector) -> Result<OutcomeDistribution> {
        let table = self.outcome_table(psi)?;
        let probabilities = table
            .iter()
            .map(|plane| plane.iter().flatten().sum())
            .collect();
        OutcomeDistribution::new(
            self.first.object_observable().eigenvalues().to_vec(),
            probabilities,
        )
    }
}
