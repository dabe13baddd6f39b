//! Classical counterpart: prior and posterior distributions of a discrete
//! random variable, and the fact that a classical nonselective measurement
//! leaves the distribution unchanged.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distribution::{JointOutcomeDistribution, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::hilbert::{DensityOperator, SpectralObservable, StateVector};
use crate::measurement::{nonselective_channel, PROBABILITY_FLOOR};

/// Total-mass tolerance for a classical joint table.
pub const JOINT_MASS_TOL: f64 = 1e-12;

/// `Pr{X = x, Y = y}` as `table[x][y]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalJoint {
    x_values: Vec<String>,
    y_values: Vec<String>,
    table: Vec<Vec<f64>>,
}

impl ClassicalJoint {
    pub fn new(x_values: Vec<String>, y_values: Vec<String>, table: Vec<Vec<f64>>) -> Result<Self> {
        if x_values.is_empty() || y_values.is_empty() {
            return Err(Error::InvalidDistribution("empty label list".into()));
        }
        for labels in [&x_values, &y_values] {
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(Error::InvalidDistribution(format!("duplicate label {l:?}")));
                }
            }
        }
        if table.len() != x_values.len() {
            return Err(Error::DimensionMismatch {
                context: "joint table rows",
                expected: x_values.len(),
                found: table.len(),
            });
        }
        let mut total = 0.0;
        for (r, row) in table.iter().enumerate() {
            if row.len() != y_values.len() {
                return Err(Error::DimensionMismatch {
                    context: "joint table columns",
                    expected: y_values.len(),
                    found: row.len(),
                });
            }
            for (c, &p) in row.iter().enumerate() {
                if !p.is_finite() || p < 0.0 {
                    return Err(Error::InvalidProbability {
                        index: r * y_values.len() + c,
                        value: p,
                    });
                }
                total += p;
            }
        }
        if (total - 1.0).abs() > JOINT_MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "joint total probability {total} differs from 1"
            )));
        }
        Ok(Self {
            x_values,
            y_values,
            table,
        })
    }

    /// Joint table of a quantum joint distribution, labelled by eigenvalue.
    /// Rows become `X`, columns `Y`.
    pub fn from_outcomes(joint: &JointOutcomeDistribution) -> Result<Self> {
        let label = |v: &[f64]| v.iter().map(|a| format!("{a}")).collect::<Vec<_>>();
        Self::new(
            label(joint.row_outcomes()),
            label(joint.col_outcomes()),
            joint.table().to_vec(),
        )
    }

    pub fn x_values(&self) -> &[String] {
        &self.x_values
    }

    pub fn y_values(&self) -> &[String] {
        &self.y_values
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    fn column_mass(&self, col: usize) -> f64 {
        self.table.iter().map(|row| row[col]).sum()
    }

    fn column_posterior(&self, col: usize, mass: f64) -> Vec<f64> {
        self.table.iter().map(|row| row[col] / mass).collect()
    }
}

/// `Pr{X = x} = Σ_y Pr{X = x, Y = y}`.
pub fn prior(joint: &ClassicalJoint) -> Result<OutcomeDistribution<String>> {
    let probabilities = joint.table.iter().map(|row| row.iter().sum()).collect();
    OutcomeDistribution::new(joint.x_values.clone(), probabilities)
}

/// `Pr{X = x | Y = y}`; fails when `Pr{Y = y} ≤ 1e-12`.
pub fn posterior(joint: &ClassicalJoint, y: &str) -> Result<OutcomeDistribution<String>> {
    let col = joint
        .y_values
        .iter()
        .position(|v| v == y)
        .ok_or_else(|| Error::UnknownLabel(y.to_owned()))?;
    let mass = joint.column_mass(col);
    if mass <= PROBABILITY_FLOOR {
        return Err(Error::NullEvent { probability: mass });
    }
    OutcomeDistribution::new(joint.x_values.clone(), joint.column_posterior(col, mass))
}

/// `Σ_y Pr{Y = y} · Pr{X = · | Y = y}`, the distribution of `X` after `Y` is
/// measured but not read. Columns with zero mass contribute nothing.
pub fn classical_nonselective(joint: &ClassicalJoint) -> Result<OutcomeDistribution<String>> {
    let mut mixture = vec![0.0; joint.x_values.len()];
    for col in 0..joint.y_values.len() {
        let mass = joint.column_mass(col);
        if mass == 0.0 {
            continue;
        }
        for (acc, p) in mixture.iter_mut().zip(joint.column_posterior(col, mass)) {
            *acc += mass * p;
        }
    }
    OutcomeDistribution::new(joint.x_values.clone(), mixture)
}

/// `‖Σₙ EₙρEₙ − ρ‖_F`: how far a quantum nonselective measurement moves `ρ`.
pub fn quantum_nonselective_change(
    observable: &SpectralObservable,
    rho: &DensityOperator,
) -> Result<f64> {
    let after = nonselective_channel(observable, rho)?;
    Ok(after.matrix().frobenius_distance(rho.matrix()))
}

/// The stock quantum contrast: `ψ = (φ₁ + φ₂)/√2` measured in the
/// `{φ₁, φ₂}` basis. Returns the Frobenius change, `1/√2`.
pub fn quantum_contrast_example() -> Result<f64> {
    let observable = SpectralObservable::diagonal(&[1.0, -1.0])?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = StateVector::new(vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)])?;
    quantum_nonselective_change(&observable, &DensityOperator::pure(&psi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|k| format!("{prefix}{k}")).collect()
    }

    fn joint(table: Vec<Vec<f64>>) -> ClassicalJoint {
        let (r, c) = (table.len(), table[0].len());
        ClassicalJoint::new(labels("x", r), labels("y", c), table).unwrap()
    }

    #[test]
    fn prior_examples() {
        let p = [0.2, 0.8];
        let q = [0.5, 0.3, 0.2];
        let product = joint(
            p.iter()
                .map(|a| q.iter().map(|b| a * b).collect())
                .collect(),
        );
        for (got, want) in prior(&product).unwrap().probabilities().iter().zip(p) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(
            prior(&joint(vec![vec![0.25, 0.25], vec![0.25, 0.25]]))
                .unwrap()
                .probabilities(),
            &[0.5, 0.5]
        );
        let t = joint(vec![vec![0.1, 0.2], vec![0.3, 0.4]]);
        let pr = prior(&t).unwrap();
        assert!((pr.probabilities()[0] - 0.3).abs() < 1e-15);
        assert!((pr.probabilities()[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn posterior_examples() {
        let product = joint(vec![vec![0.1, 0.1], vec![0.4, 0.4]]);
        let post = posterior(&product, "y1").unwrap();
        assert!(post.max_abs_diff(&prior(&product).unwrap()) < 1e-15);

        let diagonal = joint(vec![vec![0.4, 0.0], vec![0.0, 0.6]]);
        assert_eq!(
            posterior(&diagonal, "y2").unwrap().probabilities(),
            &[0.0, 1.0]
        );

        let t = joint(vec![vec![0.1, 0.2], vec![0.3, 0.4]]);
        let post = posterior(&t, "y2").unwrap();
        assert!((post.probabilities()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((post.probabilities()[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn posterior_errors() {
        let diagonal = joint(vec![vec![1.0, 0.0], vec![0.0, 0.0]]);
        assert!(matches!(
            posterior(&diagonal, "y2"),
            Err(Error::NullEvent { .. })
        ));
        assert_eq!(
            posterior(&diagonal, "nope"),
            Err(Error::UnknownLabel("nope".into()))
        );
    }

    #[test]
    fn nonselective_equals_prior() {
        for t in [
            vec![vec![0.1, 0.2], vec![0.3, 0.4]],
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
            vec![vec![0.06, 0.14], vec![0.24, 0.56]],
        ] {
            let j = joint(t);
            let diff = classical_nonselective(&j)
                .unwrap()
                .max_abs_diff(&prior(&j).unwrap());
            assert!(diff <= 1e-14);
        }
    }

    #[test]
    fn joint_validation() {
        assert!(ClassicalJoint::new(labels("x", 1), labels("y", 1), vec![vec![0.9]]).is_err());
        assert!(
            ClassicalJoint::new(labels("x", 1), labels("y", 2), vec![vec![1.2, -0.2]]).is_err()
        );
        assert!(ClassicalJoint::new(
            vec!["a".into(), "a".into()],
            labels("y", 1),
            vec![vec![0.5], vec![0.5]]
        )
        .is_err());
    }

    #[test]
    fn quantum_contrast_is_one_over_root_two() {
        let change = quantum_contrast_example().unwrap();
        assert!((change - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(change > 0.5);
    }
}
