use nalgebra::DVector;
use num_complex::Complex64;

use super::{ComplexMatrix, VALIDITY_TOL};
use crate::error::{Error, Result};

/// Normalized pure state of a finite-dimensional system.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Accepts amplitudes whose squared norm is within `1e-10` of one.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let v = Self::checked_raw(amplitudes)?;
        let norm_sq = v.norm_squared();
        if (norm_sq - 1.0).abs() > VALIDITY_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes: v })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let v = Self::checked_raw(amplitudes)?;
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        Ok(Self {
            amplitudes: v.unscale(norm),
        })
    }

    /// Real amplitudes, rescaled to unit norm.
    pub fn normalized_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The `k`-th standard basis vector.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if k >= dim {
            return Err(Error::OutcomeOutOfRange {
                index: k,
                count: dim,
            });
        }
        let mut v = DVector::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    fn checked_raw(amplitudes: Vec<Complex64>) -> Result<DVector<Complex64>> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(DVector::from_vec(amplitudes))
    }

    pub(crate) fn wrap(amplitudes: DVector<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `self ⊗ other`, object-first.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::wrap(self.amplitudes.kronecker(&other.amplitudes))
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "distance dimension mismatch");
        (&self.amplitudes - &other.amplitudes).norm()
    }

    /// Applies a matrix, returning the raw (not renormalized) image.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "evolve",
                expected: self.dim(),
                found: unitary.dim(),
            });
        }
        Ok(Self::wrap(unitary.apply(&self.amplitudes)))
    }

    /// Multiplies by the global phase that makes the first nonzero
    /// component real and positive.
    pub fn with_canonical_phase(&self) -> Self {
        let pivot = self
            .amplitudes
            .iter()
            .find(|z| z.norm() > PHASE_PIVOT_EPS)
            .copied();
        match pivot {
            Some(z) => Self::wrap(self.amplitudes.map(|a| a * z.conj() / z.norm())),
            None => self.clone(),
        }
    }
}

const PHASE_PIVOT_EPS: f64 = 1e-12;

/// Positive Hermitian operator with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity at `1e-10`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, VALIDITY_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let rho = Self { matrix };
        if let Some(min) = rho.eigenvalues().into_iter().reduce(f64::min) {
            if min < -tol {
                return Err(Error::NegativeEigenvalue { eigenvalue: min });
            }
        }
        Ok(rho)
    }

    pub fn pure(state: &StateVector) -> Self {
        Self {
            matrix: state.projector(),
        }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        })
    }

    /// Convex combination `Σ wᵢ|ψᵢ⟩⟨ψᵢ|`; the weights must be nonnegative
    /// and sum to one.
    pub fn mixture(components: &[(f64, StateVector)]) -> Result<Self> {
        let first = components.first().ok_or(Error::ZeroDimension)?;
        let dim = first.1.dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for (w, psi) in components {
            if psi.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "mixture component",
                    expected: dim,
                    found: psi.dim(),
                });
            }
            acc = acc + psi.projector().scale(Complex64::new(*w, 0.0));
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = self.matrix.hermitian_part().into_matrix();
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_gate() {
        assert!(StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).is_ok());
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            StateVector::normalized(vec![c(0.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(StateVector::new(vec![]), Err(Error::ZeroDimension));
    }

    #[test]
    fn canonical_phase_makes_first_component_positive() {
        let psi = StateVector::new(vec![c(0.0, 0.0), c(0.0, -0.6), c(0.8, 0.0)]).unwrap();
        let fixed = psi.with_canonical_phase();
        assert!((fixed.amplitudes()[1] - c(0.6, 0.0)).norm() < 1e-15);
        assert!((fixed.amplitudes()[2] - c(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn tensor_of_basis_vectors_is_basis_vector() {
        let a = StateVector::basis(2, 1).unwrap();
        let b = StateVector::basis(3, 2).unwrap();
        assert_eq!(a.tensor(&b), StateVector::basis(6, 5).unwrap());
    }

    #[test]
    fn density_operator_validation() {
        let not_herm = ComplexMatrix::from_real_rows(&[&[0.5, 1.0], &[0.0, 0.5]]).unwrap();
        assert!(matches!(
            DensityOperator::new(not_herm),
            Err(Error::NotHermitian { .. })
        ));
        let bad_trace = ComplexMatrix::from_real_diagonal(&[0.5, 0.6]).unwrap();
        assert!(matches!(
            DensityOperator::new(bad_trace),
            Err(Error::TraceNotOne { .. })
        ));
        let negative = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]).unwrap();
        assert!(matches!(
            DensityOperator::new(negative),
            Err(Error::NegativeEigenvalue { .. })
        ));
        let ok = ComplexMatrix::from_real_diagonal(&[0.25, 0.75]).unwrap();
        assert!(DensityOperator::new(ok).is_ok());
    }

    #[test]
    fn mixture_and_purity() {
        let rho = DensityOperator::mixture(&[
            (0.5, StateVector::basis(2, 0).unwrap()),
            (0.5, StateVector::basis(2, 1).unwrap()),
        ])
        .unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-15);
        assert_eq!(rho, DensityOperator::maximally_mixed(2).unwrap());
    }
}
