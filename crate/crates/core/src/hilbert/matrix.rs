use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square matrix of complex amplitudes with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, &entries))
    }

    /// Builds a matrix from a list of rows; every row must have as many
    /// entries as there are rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "matrix row",
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    /// Real-valued rows, convenient for literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Wraps an nalgebra matrix after checking it is square and finite.
    pub fn from_matrix(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        if inner.nrows() != inner.ncols() {
            return Err(Error::DimensionMismatch {
                context: "square matrix",
                expected: inner.nrows(),
                found: inner.ncols(),
            });
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { inner })
    }

    /// Internal constructor for results of operations on valid matrices.
    pub(crate) fn wrap(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.nrows() == inner.ncols() && inner.nrows() > 0);
        Self { inner }
    }

    pub fn identity(dim: usize) -> Self {
        Self::wrap(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::wrap(DMatrix::zeros(dim, dim))
    }

    pub fn from_diagonal(diagonal: &[Complex64]) -> Result<Self> {
        Self::from_matrix(DMatrix::from_diagonal(&DVector::from_column_slice(
            diagonal,
        )))
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Result<Self> {
        let d: Vec<Complex64> = diagonal.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// `|a⟩⟨b|` for raw column vectors of equal length.
    pub(crate) fn outer(a: &DVector<Complex64>, b: &DVector<Complex64>) -> Self {
        Self::wrap(a * b.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.inner
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        self.inner.transpose().as_slice().to_vec()
    }

    pub fn adjoint(&self) -> Self {
        Self::wrap(self.inner.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::wrap(&self.inner * factor)
    }

    /// Largest entrywise modulus of `self - other`.
    ///
    /// # Panics
    /// If the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff: dimension mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm of `self - other`.
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "frobenius_distance: dimension mismatch"
        );
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max entry deviation `|m[i,j] - conj(m[j,i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.inner[(i, j)] - self.inner[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(M + M†) / 2`.
    pub(crate) fn hermitian_part(&self) -> Self {
        Self::wrap((&self.inner + self.inner.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Self {
        assert_eq!(
            self.dim(),
            unitary.dim(),
            "conjugate_by: dimension mismatch"
        );
        Self::wrap(&unitary.inner * &self.inner * unitary.inner.adjoint())
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub(crate) fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.inner * v
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{}) ", self.dim(), self.dim())?;
        f.debug_list()
            .entries(
                self.inner
                    .row_iter()
                    .map(|r| r.iter().copied().collect::<Vec<_>>()),
            )
            .finish()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;

            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                assert_eq!(self.dim(), rhs.dim(), "matrix dimension mismatch");
                ComplexMatrix::wrap(&self.inner $op &rhs.inner)
            }
        }

        impl $trait<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;

            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(ComplexMatrix::new(0, vec![]), Err(Error::ZeroDimension));
        assert!(matches!(
            ComplexMatrix::new(2, vec![c(1.0, 0.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let m = ComplexMatrix::new(1, vec![c(f64::NAN, 0.0)]);
        assert_eq!(m, Err(Error::NonFinite));
        let m = ComplexMatrix::new(1, vec![c(0.0, f64::INFINITY)]);
        assert_eq!(m, Err(Error::NonFinite));
    }

    #[test]
    fn row_major_layout() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(m[(0, 1)], c(2.0, 0.0));
        assert_eq!(m[(1, 0)], c(3.0, 0.0));
        assert_eq!(
            m.to_row_major(),
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]
        );
    }

    #[test]
    fn hermitian_deviation_detects_asymmetry() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(h.hermitian_deviation(), 0.0);
        let nh = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(2.0, 0.0)],
        ])
        .unwrap();
        assert!((nh.hermitian_deviation() - 2.0).abs() < 1e-15);
        assert!(!nh.is_hermitian(1e-10));
    }

    #[test]
    fn commutator_of_pauli_x_and_z() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]).unwrap();
        // [X, Z] = -2iY = [[0, -2], [2, 0]]
        let expected = ComplexMatrix::from_real_rows(&[&[0.0, -2.0], &[2.0, 0.0]]).unwrap();
        assert_eq!(x.commutator(&z).max_abs_diff(&expected), 0.0);
    }
}
