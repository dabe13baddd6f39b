use num_complex::Complex64;

use super::{ComplexMatrix, DensityOperator, StateVector};
use crate::error::{Error, Result};

/// Kronecker product `m1 ⊗ m2` with `m1`'s index outermost.
pub fn tensor(m1: &ComplexMatrix, m2: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::wrap(m1.as_matrix().kronecker(m2.as_matrix()))
}

pub fn tensor_vectors(v1: &StateVector, v2: &StateVector) -> StateVector {
    v1.tensor(v2)
}

fn check_composite(m: &ComplexMatrix, dim_object: usize, dim_apparatus: usize) -> Result<()> {
    if dim_object == 0 || dim_apparatus == 0 {
        return Err(Error::ZeroDimension);
    }
    if m.dim() != dim_object * dim_apparatus {
        return Err(Error::DimensionMismatch {
            context: "partial trace",
            expected: dim_object * dim_apparatus,
            found: m.dim(),
        });
    }
    Ok(())
}

/// `Tr_A[m]`: traces out the right (apparatus) factor of an
/// object ⊗ apparatus operator.
pub fn partial_trace_apparatus(
    m: &ComplexMatrix,
    dim_object: usize,
    dim_apparatus: usize,
) -> Result<ComplexMatrix> {
    check_composite(m, dim_object, dim_apparatus)?;
    let q = dim_apparatus;
    let src = m.as_matrix();
    let out = nalgebra::DMatrix::from_fn(dim_object, dim_object, |i, j| {
        (0..q)
            .map(|k| src[(i * q + k, j * q + k)])
            .sum::<Complex64>()
    });
    Ok(ComplexMatrix::wrap(out))
}

/// Traces out the left (object) factor.
pub fn partial_trace_object(
    m: &ComplexMatrix,
    dim_object: usize,
    dim_apparatus: usize,
) -> Result<ComplexMatrix> {
    check_composite(m, dim_object, dim_apparatus)?;
    let q = dim_apparatus;
    let src = m.as_matrix();
    let out = nalgebra::DMatrix::from_fn(q, q, |k, l| {
        (0..dim_object)
            .map(|i| src[(i * q + k, i * q + l)])
            .sum::<Complex64>()
    });
    Ok(ComplexMatrix::wrap(out))
}

/// Von Neumann entropy `−Σ λ ln λ` in nats, with `0 ln 0 = 0`.
///
/// Eigenvalues in `[−1e-10, 0]` (admitted by [`DensityOperator`]) count as zero.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

/// `max |(U†U − I)ᵢⱼ| ≤ tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    let gram = &m.adjoint() * m;
    gram.max_abs_diff(&ComplexMatrix::identity(m.dim())) <= tol
}
