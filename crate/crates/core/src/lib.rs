//! Finite-dimensional simulation of quantum measurement processes.
//!
//! An object system is coupled to an apparatus by a unitary interaction
//! ([`measurement::MeasurementModel`]). From the composite state the crate
//! derives pointer statistics, conditional object states, joint
//! distributions of repeated measurements and chains of apparatuses, and
//! compares them with the direct rules on the object alone. [`bayes`] holds
//! the classical counterpart; [`scenario`] runs JSON-described scenarios and
//! backs the `qmeasure` command line tool.
//!
//! ```
//! use qmeasure::hilbert::{SpectralObservable, StateVector};
//! use qmeasure::measurement::{verify_linearity, MeasurementModel, ReadyState};
//!
//! let model = MeasurementModel::canonical(
//!     SpectralObservable::diagonal(&[1.0, -1.0])?,
//!     ReadyState::Pointer(0),
//! )?;
//! let psi = StateVector::normalized_real(&[0.6, 0.8])?;
//! assert!(verify_linearity(&model, &psi)? < 1e-12);
//! # Ok::<(), qmeasure::Error>(())
//! ```

pub mod bayes;
pub mod distribution;
pub mod error;
pub mod hilbert;
pub mod measurement;
pub mod scenario;

pub use error::{Error, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/interaction.md")]
    mod interaction {}
    #[doc = include_str!("../../../book/src/statistics.md")]
    mod statistics {}
    #[doc = include_str!("../../../book/src/repeatability.md")]
    mod repeatability {}
    #[doc = include_str!("../../../book/src/chain.md")]
    mod chain {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
}
