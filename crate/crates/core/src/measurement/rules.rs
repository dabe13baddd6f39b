//! State-change rules for discrete observables: outcome statistics, the
//! projection postulate, the nonselective channel, and the two composite
//! routes (conditioning on the pointer, tracing out the apparatus).

use num_complex::Complex64;

use super::MeasurementModel;
use crate::distribution::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::hilbert::{
    partial_trace_apparatus, tensor, ComplexMatrix, DensityOperator, SpectralObservable,
    StateVector,
};

/// Outcomes with probability at or below this are treated as null events.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        });
    }
    Ok(())
}

/// `pₙ = Tr[Eₙρ]`.
pub fn statistical_formula(
    observable: &SpectralObservable,
    rho: &DensityOperator,
) -> Result<OutcomeDistribution> {
    check_dim("statistical formula", observable.dim(), rho.dim())?;
    let probabilities = observable
        .projectors()
        .iter()
        .map(|e| (e * rho.matrix()).trace().re)
        .collect();
    OutcomeDistribution::new(observable.eigenvalues().to_vec(), probabilities)
}

/// `EₙρEₙ / Tr[Eₙρ]`, refusing outcomes at or below [`PROBABILITY_FLOOR`].
pub fn luders_update(
    observable: &SpectralObservable,
    rho: &DensityOperator,
    outcome_index: usize,
) -> Result<DensityOperator> {
    luders_update_with_floor(observable, rho, outcome_index, PROBABILITY_FLOOR)
}

pub fn luders_update_with_floor(
    observable: &SpectralObservable,
    rho: &DensityOperator,
    outcome_index: usize,
    floor: f64,
) -> Result<DensityOperator> {
    check_dim("Lüders update", observable.dim(), rho.dim())?;
    let e = observable.projector(outcome_index)?;
    let numerator = e * &(rho.matrix() * e);
    normalize_conditioned(numerator, floor)
}

fn normalize_conditioned(numerator: ComplexMatrix, floor: f64) -> Result<DensityOperator> {
    let probability = numerator.trace().re;
    if probability <= floor {
        return Err(Error::NullEvent { probability });
    }
    DensityOperator::new(
        numerator
            .scale(Complex64::new(1.0 / probability, 0.0))
            .hermitian_part(),
    )
}

/// `ρ ↦ Σₙ EₙρEₙ`.
pub fn nonselective_channel(
    observable: &SpectralObservable,
    rho: &DensityOperator,
) -> Result<DensityOperator> {
    check_dim("nonselective channel", observable.dim(), rho.dim())?;
    let out = observable
        .projectors()
        .iter()
        .fold(ComplexMatrix::zeros(rho.dim()), |acc, e| {
            acc + e * &(rho.matrix() * e)
        });
    DensityOperator::new(out.hermitian_part())
}

/// `Tr_A[U |ψ⊗ξ⟩⟨ψ⊗ξ| U†]`, the object's reduced state after the
/// interaction.
pub fn open_system_nonselective(
    model: &MeasurementModel,
    psi: &StateVector,
) -> Result<DensityOperator> {
    let joint = model.evolve(psi)?.projector();
    let reduced = partial_trace_apparatus(&joint, model.object_dim(), model.apparatus_dim())?;
    DensityOperator::new(reduced.hermitian_part())
}

/// Object state conditional on pointer outcome `aₙ`: evolve `ρ ⊗ σ` by `U`,
/// project with `I ⊗ E^B(aₙ)` on both sides, trace out the apparatus, and
/// normalize.
pub fn conditional_state(
    model: &MeasurementModel,
    rho_object: &DensityOperator,
    sigma_apparatus: &DensityOperator,
    outcome_index: usize,
) -> Result<DensityOperator> {
    conditional_state_with_floor(
        model,
        rho_object,
        sigma_apparatus,
        outcome_index,
        PROBABILITY_FLOOR,
    )
}

pub fn conditional_state_with_floor(
    model: &MeasurementModel,
    rho_object: &DensityOperator,
    sigma_apparatus: &DensityOperator,
    outcome_index: usize,
    floor: f64,
) -> Result<DensityOperator> {
    check_dim("object state", model.object_dim(), rho_object.dim())?;
    check_dim(
        "apparatus state",
        model.apparatus_dim(),
        sigma_apparatus.dim(),
    )?;
    let pointer = model.pointer_projector(outcome_index)?;
    let joint = tensor(rho_object.matrix(), sigma_apparatus.matrix())
        .conjugate_by(model.measuring_unitary());
    let projector = tensor(&ComplexMatrix::identity(model.object_dim()), &pointer);
    let projected = &projector * &(&joint * &projector);
    let probability = projected.trace().re;
    if probability <= floor {
        return Err(Error::NullEvent { probability });
    }
    let reduced = partial_trace_apparatus(&projected, model.object_dim(), model.apparatus_dim())?;
    normalize_conditioned(reduced, floor)
}
