//! Dense complex linear algebra on finite-dimensional Hilbert spaces.
//!
//! Composite spaces are always ordered object-first: for `m1` of dimension
//! `p` and `m2` of dimension `q`, `tensor(m1, m2)[i*q + k, j*q + l] =
//! m1[i, j] * m2[k, l]`. Every partial trace, embedding and measuring unitary
//! in the crate relies on this single layout.

mod matrix;
mod ops;
mod spectral;
mod state;

pub use matrix::ComplexMatrix;
pub use ops::{
    is_unitary, partial_trace_apparatus, partial_trace_object, tensor, tensor_vectors,
    von_neumann_entropy,
};
pub(crate) use spectral::check_orthonormal;
pub use spectral::{spectral_decompose, SpectralObservable};
pub use state::{DensityOperator, StateVector};

/// Default tolerance for every validity check (Hermiticity, normalization,
/// projector identities, orthonormality).
pub const VALIDITY_TOL: f64 = 1e-10;

/// Default absolute tolerance below which eigenvalues are merged into one
/// eigenspace.
pub const EIGENVALUE_CLUSTER_TOL: f64 = 1e-8;
