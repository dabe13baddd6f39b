//! Measuring interactions between an object and an apparatus, and the
//! state-change rules they reproduce.

mod chain;
mod derivation;
mod model;
mod repeatability;
mod rules;

pub use chain::{chain_extend, ChainModel};
pub use derivation::{joint_simultaneous_distribution, pointer_distribution, verify_linearity};
pub use model::{build_measuring_unitary, MeasurementModel, ReadyState};
pub use repeatability::{sample, seeded_rng, verify_repeatability, RepeatabilityReport};
pub use rules::{
    conditional_state, conditional_state_with_floor, luders_update, luders_update_with_floor,
    nonselective_channel, open_system_nonselective, statistical_formula, PROBABILITY_FLOOR,
};
