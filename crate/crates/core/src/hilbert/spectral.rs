use nalgebra::DVector;
use num_complex::Complex64;

use super::{tensor, ComplexMatrix, StateVector, VALIDITY_TOL};
use crate::error::{Error, Result};

/// A discrete observable `X = Σ aₙ Eₙ` held as its eigenvalues and the
/// orthogonal projectors onto the corresponding eigenspaces.
///
/// Construction enforces: pairwise distinct eigenvalues, each `Eₙ`
/// idempotent and self-adjoint, `EᵢEⱼ = 0` for `i ≠ j`, and `Σ Eₙ = I`,
/// all within `1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralObservable {
    eigenvalues: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
}

impl SpectralObservable {
    pub fn new(eigenvalues: Vec<f64>, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(eigenvalues, projectors, VALIDITY_TOL)
    }

    pub fn with_tolerance(
        eigenvalues: Vec<f64>,
        projectors: Vec<ComplexMatrix>,
        tol: f64,
    ) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidObservable("no eigenvalues".into()));
        }
        if eigenvalues.len() != projectors.len() {
            return Err(Error::DimensionMismatch {
                context: "eigenvalue/projector count",
                expected: eigenvalues.len(),
                found: projectors.len(),
            });
        }
        if eigenvalues.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidObservable("non-finite eigenvalue".into()));
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            if eigenvalues[..i].contains(a) {
                return Err(Error::InvalidObservable(format!(
                    "eigenvalue {a} appears more than once"
                )));
            }
        }
        let dim = projectors[0].dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "projector",
                    expected: dim,
                    found: p.dim(),
                });
            }
            let herm = p.hermitian_deviation();
            if herm > tol {
                return Err(Error::InvalidObservable(format!(
                    "projector {i} not self-adjoint (deviation {herm:e})"
                )));
            }
            let idem = (p * p).max_abs_diff(p);
            if idem > tol {
                return Err(Error::InvalidObservable(format!(
                    "projector {i} not idempotent (deviation {idem:e})"
                )));
            }
            for (j, q) in projectors[..i].iter().enumerate() {
                let overlap = (p * q).max_abs_diff(&ComplexMatrix::zeros(dim));
                if overlap > tol {
                    return Err(Error::InvalidObservable(format!(
                        "projectors {j} and {i} not orthogonal (overlap {overlap:e})"
                    )));
                }
            }
            sum = sum + p.clone();
        }
        let completeness = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if completeness > tol {
            return Err(Error::InvalidObservable(format!(
                "projectors do not sum to identity (deviation {completeness:e})"
            )));
        }
        Ok(Self {
            eigenvalues,
            projectors,
        })
    }

    /// Nondegenerate observable `Σ aₙ|vₙ⟩⟨vₙ|` from an orthonormal basis.
    pub fn from_eigenbasis(eigenvalues: Vec<f64>, basis: &[StateVector]) -> Result<Self> {
        check_orthonormal(basis)?;
        if let Some(first) = basis.first() {
            if basis.len() != first.dim() {
                return Err(Error::DimensionMismatch {
                    context: "eigenbasis size",
                    expected: first.dim(),
                    found: basis.len(),
                });
            }
        }
        Self::new(
            eigenvalues,
            basis.iter().map(StateVector::projector).collect(),
        )
    }

    /// Diagonal observable in the standard basis.
    pub fn diagonal(eigenvalues: &[f64]) -> Result<Self> {
        let basis = (0..eigenvalues.len())
            .map(|k| StateVector::basis(eigenvalues.len(), k))
            .collect::<Result<Vec<_>>>()?;
        Self::from_eigenbasis(eigenvalues.to_vec(), &basis)
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    /// Number of distinct outcomes.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn projector(&self, index: usize) -> Result<&ComplexMatrix> {
        self.projectors.get(index).ok_or(Error::OutcomeOutOfRange {
            index,
            count: self.len(),
        })
    }

    /// Eigenspace dimensions, `rank Eₙ = Tr Eₙ`.
    pub fn ranks(&self) -> Vec<usize> {
        self.projectors
            .iter()
            .map(|p| p.trace().re.round() as usize)
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.ranks().iter().all(|&r| r == 1)
    }

    /// Fails with [`Error::Degenerate`] naming the first eigenspace of rank > 1.
    pub fn require_nondegenerate(&self) -> Result<()> {
        match self.ranks().iter().position(|&r| r != 1) {
            Some(index) => Err(Error::Degenerate {
                index,
                rank: self.ranks()[index],
            }),
            None => Ok(()),
        }
    }

    /// Unit eigenvectors `φₙ` of a nondegenerate observable, in eigenvalue
    /// order, each with its first nonzero component real and positive.
    pub fn eigenvectors(&self) -> Result<Vec<StateVector>> {
        self.require_nondegenerate()?;
        Ok(self.projectors.iter().map(rank_one_vector).collect())
    }

    /// `Σ aₙ Eₙ`.
    pub fn matrix(&self) -> ComplexMatrix {
        self.eigenvalues
            .iter()
            .zip(&self.projectors)
            .fold(ComplexMatrix::zeros(self.dim()), |acc, (&a, p)| {
                acc + p.scale(Complex64::new(a, 0.0))
            })
    }

    /// `X ⊗ 1` on the composite space with a right factor of `dim`.
    pub fn extend_right(&self, dim: usize) -> Self {
        let id = ComplexMatrix::identity(dim);
        Self {
            eigenvalues: self.eigenvalues.clone(),
            projectors: self.projectors.iter().map(|p| tensor(p, &id)).collect(),
        }
    }

    /// `1 ⊗ X` on the composite space with a left factor of `dim`.
    pub fn extend_left(&self, dim: usize) -> Self {
        let id = ComplexMatrix::identity(dim);
        Self {
            eigenvalues: self.eigenvalues.clone(),
            projectors: self.projectors.iter().map(|p| tensor(&id, p)).collect(),
        }
    }
}

/// Extracts the unit vector spanning a rank-one projector from its
/// largest column.
fn rank_one_vector(p: &ComplexMatrix) -> StateVector {
    let m = p.as_matrix();
    let col = (0..m.ncols())
        .max_by(|&a, &b| m.column(a).norm().total_cmp(&m.column(b).norm()))
        .expect("projector has at least one column");
    let v: DVector<Complex64> = m.column(col).into_owned();
    let norm = v.norm();
    StateVector::wrap(v.unscale(norm)).with_canonical_phase()
}

/// Max deviation of the Gram matrix of `vectors` from the identity.
fn orthonormality_deviation(vectors: &[StateVector]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b) - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

pub(crate) fn check_orthonormal(vectors: &[StateVector]) -> Result<()> {
    let Some(first) = vectors.first() else {
        return Err(Error::ZeroDimension);
    };
    for v in vectors {
        if v.dim() != first.dim() {
            return Err(Error::DimensionMismatch {
                context: "basis vector",
                expected: first.dim(),
                found: v.dim(),
            });
        }
    }
    let deviation = orthonormality_deviation(vectors);
    if deviation > VALIDITY_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(())
}

/// Eigen-decomposes a Hermitian matrix into a [`SpectralObservable`].
///
/// Eigenvalues are sorted ascending and chained into one eigenspace while
/// consecutive values differ by less than `eigenvalue_tolerance`; each
/// cluster is reported with its mean eigenvalue and the projector onto the
/// span of its eigenvectors.
pub fn spectral_decompose(
    hermitian: &ComplexMatrix,
    eigenvalue_tolerance: f64,
) -> Result<SpectralObservable> {
    let deviation = hermitian.hermitian_deviation();
    if deviation > VALIDITY_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = hermitian.hermitian_part().into_matrix().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for idx in order {
        let value = eig.eigenvalues[idx];
        match clusters.last_mut() {
            Some(cluster) if value - last < eigenvalue_tolerance => cluster.push(idx),
            _ => clusters.push(vec![idx]),
        }
        last = value;
    }

    let dim = hermitian.dim();
    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut projectors = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mean = cluster.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / cluster.len() as f64;
        let projector = cluster.iter().fold(ComplexMatrix::zeros(dim), |acc, &i| {
            let v = eig.eigenvectors.column(i).into_owned();
            acc + ComplexMatrix::outer(&v, &v)
        });
        eigenvalues.push(mean);
        projectors.push(projector);
    }
    SpectralObservable::new(eigenvalues, projectors)
}
