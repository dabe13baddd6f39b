//! Outcome statistics read directly off `Ψ = U(ψ⊗ξ)`, with no projection
//! postulate applied to the composite system.

use nalgebra::DVector;
use num_complex::Complex64;

use super::MeasurementModel;
use crate::distribution::{JointOutcomeDistribution, OutcomeDistribution};
use crate::error::Result;
use crate::hilbert::StateVector;

/// `‖U(ψ⊗ξ) − Σₙ cₙ φₙ⊗ξₙ‖` with `cₙ = ⟨φₙ|ψ⟩`.
pub fn verify_linearity(model: &MeasurementModel, psi: &StateVector) -> Result<f64> {
    let lhs = model.evolve(psi)?;
    let coefficients = model.coefficients(psi)?;
    let rhs = correlated_state(model, &coefficients);
    Ok((lhs.as_vector() - rhs).norm())
}

/// `Σₙ cₙ φₙ⊗ξₙ`.
pub(crate) fn correlated_state(
    model: &MeasurementModel,
    coefficients: &[Complex64],
) -> DVector<Complex64> {
    let dim = model.object_dim() * model.apparatus_dim();
    model
        .object_basis()
        .iter()
        .zip(model.pointer_eigenvectors())
        .zip(coefficients)
        .fold(DVector::zeros(dim), |acc, ((phi, xi), c)| {
            acc + phi.tensor(xi).as_vector() * *c
        })
}

/// `(I ⊗ ⟨ξₙ|) Ψ` as an object-space vector.
fn pointer_component(
    model: &MeasurementModel,
    big_psi: &StateVector,
    n: usize,
) -> DVector<Complex64> {
    let m = model.apparatus_dim();
    let xi = model.pointer_eigenvectors()[n].as_vector();
    DVector::from_fn(model.object_dim(), |i, _| {
        (0..m)
            .map(|k| xi[k].conj() * big_psi.amplitudes()[i * m + k])
            .sum()
    })
}

/// `Pr{B(t+Δt) = aₙ} = ⟨Ψ|(1 ⊗ |ξₙ⟩⟨ξₙ|)|Ψ⟩`, reported over the object
/// eigenvalues since each pointer reading is identified with the
/// corresponding object outcome.
pub fn pointer_distribution(
    model: &MeasurementModel,
    psi: &StateVector,
) -> Result<OutcomeDistribution> {
    let big_psi = model.evolve(psi)?;
    let probabilities = (0..model.outcome_count())
        .map(|n| pointer_component(model, &big_psi, n).norm_squared())
        .collect();
    OutcomeDistribution::new(
        model.object_observable().eigenvalues().to_vec(),
        probabilities,
    )
}

/// `table[n][m] = |⟨φₘ⊗ξₙ|Ψ⟩|²`: rows are pointer readings, columns a
/// simultaneous measurement of the object observable, both just after the
/// interaction.
pub fn joint_simultaneous_distribution(
    model: &MeasurementModel,
    psi: &StateVector,
) -> Result<JointOutcomeDistribution> {
    let big_psi = model.evolve(psi)?;
    let table = model
        .pointer_eigenvectors()
        .iter()
        .map(|xi_n| {
            model
                .object_basis()
                .iter()
                .map(|phi_m| phi_m.tensor(xi_n).inner(&big_psi).norm_sqr())
                .collect()
        })
        .collect();
    let eigenvalues = model.object_observable().eigenvalues().to_vec();
    JointOutcomeDistribution::new(eigenvalues.clone(), eigenvalues, table)
}
