use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CheckName, ScenarioError};
use crate::hilbert::{SpectralObservable, StateVector};
use crate::measurement::MeasurementModel;

/// Squared-norm tolerance for amplitudes read from a scenario file.
pub const AMPLITUDE_NORM_TOL: f64 = 1e-8;

/// Default `τ/Δt` above which `Δt ≪ τ` is reported as holding.
pub const DEFAULT_REGIME_RATIO: f64 = 10.0;

/// A declarative measurement scenario, read from JSON.
///
/// The object observable is diagonal in the standard basis with the given
/// eigenvalues; the apparatus pointer eigenvectors are the first
/// `objectDim` standard basis vectors of the apparatus space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub object_dim: usize,
    /// Defaults to `objectDim`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apparatus_dim: Option<usize>,
    pub object_eigenvalues: Vec<f64>,
    /// `cₙ` as `[re, im]` pairs.
    pub initial_amplitudes: Vec<[f64; 2]>,
    pub ready_state: ReadyStateSpec,
    pub timing: Timing,
    #[serde(default)]
    pub checks: Vec<String>,
    pub monte_carlo: MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub enum ReadyStateSpec {
    /// 0-based pointer eigenvector index.
    PointerIndex(usize),
    /// Explicit apparatus amplitudes as `[re, im]` pairs.
    Amplitudes(Vec<[f64; 2]>),
}

/// Times in seconds. `t` is the start of the interaction, `deltaT` its
/// duration, `tau` the duration of the pointer-reading process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Timing {
    pub t: f64,
    pub delta_t: f64,
    pub tau: f64,
    #[serde(default = "default_regime_ratio")]
    pub regime_ratio_threshold: f64,
    /// Marks the timing values as illustrative rather than measured.
    #[serde(default)]
    pub illustrative: bool,
}

fn default_regime_ratio() -> f64 {
    DEFAULT_REGIME_RATIO
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MonteCarlo {
    pub trials: u64,
    pub seed: u64,
}

fn invalid(field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid {
        field: field.to_owned(),
        message: message.into(),
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect()
}

fn check_amplitudes(field: &str, pairs: &[[f64; 2]], dim: usize) -> Result<(), ScenarioError> {
    if pairs.len() != dim {
        return Err(invalid(
            field,
            format!("expected {dim} amplitudes, found {}", pairs.len()),
        ));
    }
    if pairs.iter().flatten().any(|x| !x.is_finite()) {
        return Err(invalid(field, "amplitudes must be finite"));
    }
    let norm_sq: f64 = to_complex(pairs).iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > AMPLITUDE_NORM_TOL {
        return Err(invalid(
            field,
            format!("amplitudes must be normalized (squared norm {norm_sq})"),
        ));
    }
    Ok(())
}

impl Scenario {
    /// Parses JSON and validates every invariant.
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let scenario: Scenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn apparatus_dim(&self) -> usize {
        self.apparatus_dim.unwrap_or(self.object_dim)
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let d = self.object_dim;
        if d == 0 {
            return Err(invalid("objectDim", "objectDim must be positive"));
        }
        if self.apparatus_dim() < d {
            return Err(invalid(
                "apparatusDim",
                "apparatusDim must be at least objectDim",
            ));
        }
        if self.object_eigenvalues.len() != d {
            return Err(invalid(
                "objectEigenvalues",
                format!(
                    "expected {d} eigenvalues, found {}",
                    self.object_eigenvalues.len()
                ),
            ));
        }
        for (i, a) in self.object_eigenvalues.iter().enumerate() {
            if !a.is_finite() {
                return Err(invalid("objectEigenvalues", "eigenvalues must be finite"));
            }
            if self.object_eigenvalues[..i].contains(a) {
                return Err(invalid(
                    "objectEigenvalues",
                    format!("eigenvalue {a} repeated; the object observable must be nondegenerate"),
                ));
            }
        }
        check_amplitudes("initialAmplitudes", &self.initial_amplitudes, d)?;
        match &self.ready_state {
            ReadyStateSpec::PointerIndex(k) if *k >= d => {
                return Err(invalid(
                    "readyState.pointerIndex",
                    format!("pointer index {k} out of range for {d} pointer positions"),
                ));
            }
            ReadyStateSpec::PointerIndex(_) => {}
            ReadyStateSpec::Amplitudes(pairs) => {
                check_amplitudes("readyState.amplitudes", pairs, self.apparatus_dim())?;
            }
        }
        let timing = &self.timing;
        if !timing.t.is_finite() {
            return Err(invalid("timing.t", "t must be finite"));
        }
        if !(timing.delta_t.is_finite() && timing.delta_t > 0.0) {
            return Err(invalid("timing.deltaT", "deltaT must be positive"));
        }
        if !(timing.tau.is_finite() && timing.tau >= 0.0) {
            return Err(invalid("timing.tau", "tau must be nonnegative"));
        }
        if !(timing.regime_ratio_threshold.is_finite() && timing.regime_ratio_threshold > 0.0) {
            return Err(invalid(
                "timing.regimeRatioThreshold",
                "regimeRatioThreshold must be positive",
            ));
        }
        for name in &self.checks {
            name.parse::<CheckName>()
                .map_err(|_| invalid("checks", format!("unknown check name {name:?}")))?;
        }
        if self.monte_carlo.trials == 0 {
            return Err(invalid("monteCarlo.trials", "trials must be positive"));
        }
        Ok(())
    }

    /// `ψ = Σ cₙ φₙ`. Drift below the parse tolerance is divided out.
    pub fn initial_state(&self) -> Result<StateVector, ScenarioError> {
        Ok(StateVector::normalized(to_complex(
            &self.initial_amplitudes,
        ))?)
    }

    pub fn ready_state_vector(&self) -> Result<StateVector, ScenarioError> {
        Ok(match &self.ready_state {
            ReadyStateSpec::PointerIndex(k) => StateVector::basis(self.apparatus_dim(), *k)?,
            ReadyStateSpec::Amplitudes(pairs) => StateVector::normalized(to_complex(pairs))?,
        })
    }

    pub fn object_observable(&self) -> Result<SpectralObservable, ScenarioError> {
        Ok(SpectralObservable::diagonal(&self.object_eigenvalues)?)
    }

    pub fn build_model(&self) -> Result<MeasurementModel, ScenarioError> {
        let m = self.apparatus_dim();
        let pointers = (0..self.object_dim)
            .map(|k| StateVector::basis(m, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MeasurementModel::new(
            self.object_observable()?,
            self.ready_state_vector()?,
            pointers,
        )?)
    }
}

/// Reads and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Scenario::from_json(&text)
}
