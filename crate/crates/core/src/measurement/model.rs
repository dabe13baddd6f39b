use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{
    is_unitary, tensor, ComplexMatrix, SpectralObservable, StateVector, VALIDITY_TOL,
};

/// How the apparatus ready state `ξ` is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ReadyState {
    /// `ξ = ξₖ`, the `k`-th pointer eigenvector (0-based).
    Pointer(usize),
    /// An explicit apparatus-space vector.
    Vector(StateVector),
}

/// An object observable coupled to an apparatus by a measuring unitary `U`
/// with `U(φₙ ⊗ ξ) = φₙ ⊗ ξₙ` for every eigenvector `φₙ` of the object
/// observable.
///
/// Immutable once built; every constructor re-checks unitarity and the
/// pointer constraint at `1e-10`.
#[derive(Debug, Clone)]
pub struct MeasurementModel {
    object_observable: SpectralObservable,
    object_basis: Vec<StateVector>,
    ready_state: StateVector,
    pointer_observable: SpectralObservable,
    pointer_eigenvectors: Vec<StateVector>,
    measuring_unitary: ComplexMatrix,
}

impl MeasurementModel {
    /// Builds the model with the canonical block unitary from
    /// [`build_measuring_unitary`].
    pub fn new(
        object_observable: SpectralObservable,
        ready_state: StateVector,
        pointer_eigenvectors: Vec<StateVector>,
    ) -> Result<Self> {
        let unitary =
            build_measuring_unitary(&object_observable, &ready_state, &pointer_eigenvectors)?;
        Self::with_unitary(
            object_observable,
            ready_state,
            pointer_eigenvectors,
            unitary,
        )
    }

    /// Apparatus of the same dimension as the object, pointer eigenvectors
    /// `ξₙ = eₙ` paired with the object eigenvalues in order.
    pub fn canonical(object_observable: SpectralObservable, ready: ReadyState) -> Result<Self> {
        let d = object_observable.dim();
        let pointers = (0..d)
            .map(|k| StateVector::basis(d, k))
            .collect::<Result<Vec<_>>>()?;
        let ready_state = match ready {
            ReadyState::Pointer(k) => StateVector::basis(d, k)?,
            ReadyState::Vector(v) => v,
        };
        Self::new(object_observable, ready_state, pointers)
    }

    /// Accepts a caller-supplied unitary after checking it against the
    /// model invariants.
    pub fn with_unitary(
        object_observable: SpectralObservable,
        ready_state: StateVector,
        pointer_eigenvectors: Vec<StateVector>,
        measuring_unitary: ComplexMatrix,
    ) -> Result<Self> {
        check_inputs(&object_observable, &ready_state, &pointer_eigenvectors)?;
        let object_basis = object_observable.eigenvectors()?;
        let pointer_observable =
            pointer_observable(object_observable.eigenvalues(), &pointer_eigenvectors)?;
        let composite = object_observable.dim() * ready_state.dim();
        if measuring_unitary.dim() != composite {
            return Err(Error::DimensionMismatch {
                context: "measuring unitary",
                expected: composite,
                found: measuring_unitary.dim(),
            });
        }
        if !is_unitary(&measuring_unitary, VALIDITY_TOL) {
            return Err(Error::InvalidObservable(
                "measuring unitary is not unitary".into(),
            ));
        }
        let model = Self {
            object_observable,
            object_basis,
            ready_state,
            pointer_observable,
            pointer_eigenvectors,
            measuring_unitary,
        };
        let residual = model.constraint_residual();
        if residual > VALIDITY_TOL {
            return Err(Error::InvalidObservable(format!(
                "measuring unitary violates U(φₙ⊗ξ) = φₙ⊗ξₙ by {residual:e}"
            )));
        }
        Ok(model)
    }

    pub fn object_observable(&self) -> &SpectralObservable {
        &self.object_observable
    }

    /// Eigenvectors `φₙ` of the object observable, canonical phase.
    pub fn object_basis(&self) -> &[StateVector] {
        &self.object_basis
    }

    pub fn ready_state(&self) -> &StateVector {
        &self.ready_state
    }

    pub fn pointer_observable(&self) -> &SpectralObservable {
        &self.pointer_observable
    }

    pub fn pointer_eigenvectors(&self) -> &[StateVector] {
        &self.pointer_eigenvectors
    }

    pub fn measuring_unitary(&self) -> &ComplexMatrix {
        &self.measuring_unitary
    }

    pub fn object_dim(&self) -> usize {
        self.object_observable.dim()
    }

    pub fn apparatus_dim(&self) -> usize {
        self.ready_state.dim()
    }

    /// Number of outcomes `d`.
    pub fn outcome_count(&self) -> usize {
        self.object_basis.len()
    }

    /// `E^B(aₙ) = |ξₙ⟩⟨ξₙ|`.
    pub fn pointer_projector(&self, n: usize) -> Result<ComplexMatrix> {
        self.pointer_eigenvectors
            .get(n)
            .map(StateVector::projector)
            .ok_or(Error::OutcomeOutOfRange {
                index: n,
                count: self.outcome_count(),
            })
    }

    /// `maxₙ ‖U(φₙ⊗ξ) − φₙ⊗ξₙ‖`.
    pub fn constraint_residual(&self) -> f64 {
        self.object_basis
            .iter()
            .zip(&self.pointer_eigenvectors)
            .map(|(phi, xi_n)| {
                let image = phi
                    .tensor(&self.ready_state)
                    .evolve(&self.measuring_unitary)
                    .expect("dimensions checked at construction");
                image.distance(&phi.tensor(xi_n))
            })
            .fold(0.0, f64::max)
    }

    /// Max entry of `[U, A⊗1]`.
    pub fn commutator_residual(&self) -> f64 {
        let a1 = tensor(
            &self.object_observable.matrix(),
            &ComplexMatrix::identity(self.apparatus_dim()),
        );
        let comm = self.measuring_unitary.commutator(&a1);
        comm.max_abs_diff(&ComplexMatrix::zeros(comm.dim()))
    }

    /// `ψ ⊗ ξ`.
    pub fn prepare(&self, psi: &StateVector) -> Result<StateVector> {
        self.check_object_state(psi)?;
        Ok(psi.tensor(&self.ready_state))
    }

    /// `Ψ = U(ψ ⊗ ξ)`, the composite state just after the interaction.
    pub fn evolve(&self, psi: &StateVector) -> Result<StateVector> {
        self.prepare(psi)?.evolve(&self.measuring_unitary)
    }

    /// `cₙ = ⟨φₙ|ψ⟩`.
    pub fn coefficients(&self, psi: &StateVector) -> Result<Vec<Complex64>> {
        self.check_object_state(psi)?;
        Ok(self.object_basis.iter().map(|phi| phi.inner(psi)).collect())
    }

    pub(crate) fn check_object_state(&self, psi: &StateVector) -> Result<()> {
        if psi.dim() != self.object_dim() {
            return Err(Error::DimensionMismatch {
                context: "object state",
                expected: self.object_dim(),
                found: psi.dim(),
            });
        }
        Ok(())
    }
}

fn check_inputs(
    object_observable: &SpectralObservable,
    ready_state: &StateVector,
    pointer_eigenvectors: &[StateVector],
) -> Result<()> {
    object_observable.require_nondegenerate()?;
    let d = object_observable.dim();
    if pointer_eigenvectors.len() != d {
        return Err(Error::DimensionMismatch {
            context: "pointer eigenvector count",
            expected: d,
            found: pointer_eigenvectors.len(),
        });
    }
    if ready_state.dim() < d {
        return Err(Error::DimensionMismatch {
            context: "apparatus dimension (must be at least the object dimension)",
            expected: d,
            found: ready_state.dim(),
        });
    }
    for xi in pointer_eigenvectors {
        if xi.dim() != ready_state.dim() {
            return Err(Error::DimensionMismatch {
                context: "pointer eigenvector",
                expected: ready_state.dim(),
                found: xi.dim(),
            });
        }
    }
    crate::hilbert::check_orthonormal(pointer_eigenvectors)
}

/// `B = Σ aₙ|ξₙ⟩⟨ξₙ|`. When the pointer vectors do not span the apparatus
/// space, the orthocomplement becomes an extra off-scale eigenspace with
/// eigenvalue `max aₙ + 1`, which no state prepared by the model populates.
fn pointer_observable(
    eigenvalues: &[f64],
    pointer_eigenvectors: &[StateVector],
) -> Result<SpectralObservable> {
    let m = pointer_eigenvectors[0].dim();
    let mut values = eigenvalues.to_vec();
    let mut projectors: Vec<ComplexMatrix> = pointer_eigenvectors
        .iter()
        .map(StateVector::projector)
        .collect();
    if m > pointer_eigenvectors.len() {
        let covered = projectors
            .iter()
            .fold(ComplexMatrix::zeros(m), |acc, p| acc + p.clone());
        let off_scale = values.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;
        values.push(off_scale);
        projectors.push(ComplexMatrix::identity(m) - covered);
    }
    SpectralObservable::new(values, projectors)
}

/// Constructs `U = Σₙ |φₙ⟩⟨φₙ| ⊗ Vₙ` with apparatus unitaries `Vₙξ = ξₙ`.
///
/// If `ξ` coincides with a pointer eigenvector `ξᵣ` (and `d > 1`), `Vₙ` is the
/// cyclic shift `ξₖ ↦ ξ_{(k − r + n) mod d}` (0-based), extended by the
/// identity off the pointer span. Otherwise `Vₙ` pairs a Gram–Schmidt
/// completion of `{ξ}` with one of `{ξₙ}`.
pub fn build_measuring_unitary(
    object_observable: &SpectralObservable,
    ready_state: &StateVector,
    pointer_eigenvectors: &[StateVector],
) -> Result<ComplexMatrix> {
    check_inputs(object_observable, ready_state, pointer_eigenvectors)?;
    let blocks = apparatus_blocks(ready_state, pointer_eigenvectors)?;
    let m = ready_state.dim();
    Ok(object_observable.projectors().iter().zip(&blocks).fold(
        ComplexMatrix::zeros(object_observable.dim() * m),
        |acc, (p, v)| acc + tensor(p, v),
    ))
}

/// Apparatus unitaries `Vₙ` with `Vₙ ready = pointersₙ`, one per pointer vector.
pub(crate) fn apparatus_blocks(
    ready: &StateVector,
    pointers: &[StateVector],
) -> Result<Vec<ComplexMatrix>> {
    crate::hilbert::check_orthonormal(pointers)?;
    let d = pointers.len();
    let m = ready.dim();
    if pointers[0].dim() != m {
        return Err(Error::DimensionMismatch {
            context: "pointer eigenvector",
            expected: m,
            found: pointers[0].dim(),
        });
    }
    if m < d {
        return Err(Error::DimensionMismatch {
            context: "apparatus dimension (must be at least the outcome count)",
            expected: d,
            found: m,
        });
    }

    let matched = pointers
        .iter()
        .position(|xi| xi.distance(ready) <= VALIDITY_TOL);
    match matched {
        Some(r) if d > 1 => {
            let covered = pointers
                .iter()
                .fold(ComplexMatrix::zeros(m), |acc, xi| acc + xi.projector());
            let off_span = ComplexMatrix::identity(m) - covered;
            Ok((0..d)
                .map(|n| {
                    (0..d).fold(off_span.clone(), |acc, k| {
                        let target = &pointers[(k + d - r + n) % d];
                        acc + ComplexMatrix::outer(target.as_vector(), pointers[k].as_vector())
                    })
                })
                .collect())
        }
        _ => {
            let source = complete_basis(ready);
            Ok(pointers
                .iter()
                .map(|xi_n| ComplexMatrix::wrap(complete_basis(xi_n) * source.adjoint()))
                .collect())
        }
    }
}

/// Orthonormal basis (as columns) whose first column is `first`, completed
/// by modified Gram–Schmidt over standard basis vectors, always taking the
/// candidate with the largest residual (lowest index on ties).
fn complete_basis(first: &StateVector) -> DMatrix<Complex64> {
    let m = first.dim();
    let mut cols: Vec<DVector<Complex64>> = vec![first.as_vector().clone()];
    while cols.len() < m {
        let residual = |k: usize| {
            let mut v = DVector::<Complex64>::zeros(m);
            v[k] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for c in &cols {
                    let overlap = c.dotc(&v);
                    v -= c * overlap;
                }
            }
            v
        };
        let mut best: Option<DVector<Complex64>> = None;
        for k in 0..m {
            let v = residual(k);
            if best.as_ref().is_none_or(|b| v.norm() > b.norm()) {
                best = Some(v);
            }
        }
        let vec = best.expect("m > 0");
        let norm = vec.norm();
        cols.push(vec.unscale(norm));
    }
    DMatrix::from_columns(&cols)
}
