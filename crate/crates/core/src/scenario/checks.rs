use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::report::{CheckResult, Metric, Report, Table};
use super::timing::run_timing_comparison;
use super::{Scenario, ScenarioError};
use crate::bayes::{classical_nonselective, prior, quantum_nonselective_change, ClassicalJoint};
use crate::hilbert::{von_neumann_entropy, DensityOperator, StateVector, VALIDITY_TOL};
use crate::measurement::{
    chain_extend, conditional_state, joint_simultaneous_distribution, luders_update,
    nonselective_channel, open_system_nonselective, pointer_distribution, statistical_formula,
    verify_linearity, verify_repeatability, MeasurementModel, PROBABILITY_FLOOR,
};

/// Pass threshold for zero-probability (off-diagonal / off-support) mass.
pub const CORRELATION_TOL: f64 = 1e-12;
/// Slack allowed on entropy monotonicity.
pub const ENTROPY_TOL: f64 = 1e-8;
/// Pass threshold for the classical total-probability identity.
pub const CLASSICAL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Constraint,
    Linearity,
    PointerDistribution,
    JointDistribution,
    ConditionalState,
    Chain,
    RepeatabilityMontecarlo,
    Entropy,
    BayesContrast,
    OpenSystem,
}

impl CheckName {
    pub const ALL: [CheckName; 10] = [
        CheckName::Constraint,
        CheckName::Linearity,
        CheckName::PointerDistribution,
        CheckName::JointDistribution,
        CheckName::ConditionalState,
        CheckName::Chain,
        CheckName::RepeatabilityMontecarlo,
        CheckName::Entropy,
        CheckName::BayesContrast,
        CheckName::OpenSystem,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Constraint => "constraint",
            CheckName::Linearity => "linearity",
            CheckName::PointerDistribution => "pointer-distribution",
            CheckName::JointDistribution => "joint-distribution",
            CheckName::ConditionalState => "conditional-state",
            CheckName::Chain => "chain",
            CheckName::RepeatabilityMontecarlo => "repeatability-montecarlo",
            CheckName::Entropy => "entropy",
            CheckName::BayesContrast => "bayes-contrast",
            CheckName::OpenSystem => "open-system",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ScenarioError::UnknownCheck(s.to_owned()))
    }
}

/// Shared inputs for every check in a run.
struct Context<'a> {
    scenario: &'a Scenario,
    model: MeasurementModel,
    psi: StateVector,
}

/// Builds the model and runs every named check, in the order listed.
pub fn run_checks(scenario: &Scenario) -> Result<Report, ScenarioError> {
    let names = scenario
        .checks
        .iter()
        .map(|n| n.parse::<CheckName>())
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = Context {
        scenario,
        model: scenario.build_model()?,
        psi: scenario.initial_state()?,
    };
    let checks = names
        .into_iter()
        .map(|name| run_one(&ctx, name))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report {
        scenario: scenario.clone(),
        timing: run_timing_comparison(scenario),
        checks,
    })
}

fn run_one(ctx: &Context<'_>, name: CheckName) -> Result<CheckResult, ScenarioError> {
    match name {
        CheckName::Constraint => constraint(ctx),
        CheckName::Linearity => linearity(ctx),
        CheckName::PointerDistribution => pointer(ctx),
        CheckName::JointDistribution => joint(ctx),
        CheckName::ConditionalState => conditional(ctx),
        CheckName::Chain => chain(ctx),
        CheckName::RepeatabilityMontecarlo => repeatability(ctx),
        CheckName::Entropy => entropy(ctx),
        CheckName::BayesContrast => bayes_contrast(ctx),
        CheckName::OpenSystem => open_system(ctx),
    }
}

fn constraint(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let residual = ctx.model.constraint_residual();
    let commutator = ctx.model.commutator_residual();
    Ok(CheckResult::new(
        CheckName::Constraint,
        residual <= VALIDITY_TOL,
        vec![
            Metric::new("residual", residual),
            Metric::new("commutator_residual", commutator),
        ],
    ))
}

fn linearity(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let residual = verify_linearity(&ctx.model, &ctx.psi)?;
    Ok(CheckResult::new(
        CheckName::Linearity,
        residual <= VALIDITY_TOL,
        vec![Metric::new("residual", residual)],
    ))
}

fn pointer(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let pointer = pointer_distribution(&ctx.model, &ctx.psi)?;
    let formula = statistical_formula(
        ctx.model.object_observable(),
        &DensityOperator::pure(&ctx.psi),
    )?;
    let coefficients: Vec<f64> = ctx
        .model
        .coefficients(&ctx.psi)?
        .iter()
        .map(|c| c.norm_sqr())
        .collect();
    let vs_coefficients = pointer
        .probabilities()
        .iter()
        .zip(&coefficients)
        .map(|(p, c)| (p - c).abs())
        .fold(0.0, f64::max);
    let vs_formula = pointer.max_abs_diff(&formula);
    let rows = pointer
        .outcomes()
        .iter()
        .zip(pointer.probabilities())
        .zip(&coefficients)
        .map(|((a, p), c)| vec![*a, *p, *c])
        .collect();
    Ok(CheckResult::new(
        CheckName::PointerDistribution,
        vs_coefficients <= VALIDITY_TOL && vs_formula <= VALIDITY_TOL,
        vec![
            Metric::new("max_deviation_from_coefficients", vs_coefficients),
            Metric::new("max_deviation_from_statistical_formula", vs_formula),
        ],
    )
    .with_table(Table::new(
        &["outcome", "pointer_probability", "coefficient_probability"],
        rows,
    )))
}

fn joint(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let joint = joint_simultaneous_distribution(&ctx.model, &ctx.psi)?;
    let off = joint.off_diagonal_mass();
    let mut rows = Vec::new();
    for (n, a) in joint.row_outcomes().iter().enumerate() {
        for (m, b) in joint.col_outcomes().iter().enumerate() {
            rows.push(vec![*a, *b, joint.get(n, m)]);
        }
    }
    Ok(CheckResult::new(
        CheckName::JointDistribution,
        off <= CORRELATION_TOL,
        vec![Metric::new("off_diagonal_mass", off)],
    )
    .with_table(Table::new(
        &["pointer_outcome", "second_outcome", "probability"],
        rows,
    )))
}

fn conditional(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let rho = DensityOperator::pure(&ctx.psi);
    let sigma = DensityOperator::pure(ctx.model.ready_state());
    let first = pointer_distribution(&ctx.model, &ctx.psi)?;
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for (n, (&a, &p)) in first
        .outcomes()
        .iter()
        .zip(first.probabilities())
        .enumerate()
    {
        if p <= PROBABILITY_FLOOR {
            continue;
        }
        let via_apparatus = conditional_state(&ctx.model, &rho, &sigma, n)?;
        let direct = luders_update(ctx.model.object_observable(), &rho, n)?;
        let distance = via_apparatus.matrix().frobenius_distance(direct.matrix());
        worst = worst.max(distance);
        rows.push(vec![a, p, distance]);
    }
    Ok(CheckResult::new(
        CheckName::ConditionalState,
        worst <= VALIDITY_TOL,
        vec![Metric::new("max_frobenius_distance", worst)],
    )
    .with_table(Table::new(
        &["outcome", "probability", "frobenius_distance"],
        rows,
    )))
}

fn chain(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let d = ctx.model.outcome_count();
    let second_pointers = (0..d)
        .map(|k| StateVector::basis(d, k))
        .collect::<Result<Vec<_>, _>>()?;
    let chain = chain_extend(&ctx.model, second_pointers, StateVector::basis(d, 0)?)?;
    let residual = chain.final_state_residual(&ctx.psi)?;
    let off_support = chain.off_support_mass(&ctx.psi)?;
    let marginal = chain
        .second_pointer_distribution(&ctx.psi)?
        .max_abs_diff(&pointer_distribution(&ctx.model, &ctx.psi)?);
    let eigenvalues = ctx.model.object_observable().eigenvalues();
    let table = chain.outcome_table(&ctx.psi)?;
    let mut rows = Vec::new();
    for (a, plane) in table.iter().enumerate() {
        for (b, row) in plane.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                rows.push(vec![eigenvalues[a], eigenvalues[b], eigenvalues[c], *p]);
            }
        }
    }
    Ok(CheckResult::new(
        CheckName::Chain,
        residual <= VALIDITY_TOL && off_support <= CORRELATION_TOL && marginal <= VALIDITY_TOL,
        vec![
            Metric::new("final_state_residual", residual),
            Metric::new("off_support_mass", off_support),
            Metric::new("marginal_deviation", marginal),
        ],
    )
    .with_table(Table::new(
        &[
            "second_pointer_outcome",
            "first_pointer_outcome",
            "object_outcome",
            "probability",
        ],
        rows,
    )))
}

fn repeatability(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let mc = &ctx.scenario.monte_carlo;
    let report = verify_repeatability(&ctx.model, &ctx.psi, mc.trials, mc.seed)?;
    let expected = pointer_distribution(&ctx.model, &ctx.psi)?;
    let trials = report.trials as f64;
    let mut within = 0.0;
    let mut rows = Vec::new();
    for ((&a, &p), &count) in expected
        .outcomes()
        .iter()
        .zip(expected.probabilities())
        .zip(&report.first_outcome_counts)
    {
        let freq = count as f64 / trials;
        let bound = 3.0 * (p * (1.0 - p) / trials).sqrt();
        let ok = (freq - p).abs() <= bound;
        if ok {
            within += 1.0;
        }
        rows.push(vec![a, count as f64, freq, p, bound]);
    }
    Ok(CheckResult::new(
        CheckName::RepeatabilityMontecarlo,
        report.all_agree(),
        vec![
            Metric::new("seed", report.seed as f64),
            Metric::new("trials", trials),
            Metric::new("agreements", report.agreements as f64),
            Metric::new("outcomes_within_3_sigma", within),
        ],
    )
    .with_table(Table::new(
        &[
            "outcome",
            "count",
            "frequency",
            "expected_probability",
            "three_sigma",
        ],
        rows,
    )))
}

fn entropy(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let rho = DensityOperator::pure(&ctx.psi);
    let after = nonselective_channel(ctx.model.object_observable(), &rho)?;
    let before_s = von_neumann_entropy(&rho);
    let after_s = von_neumann_entropy(&after);
    Ok(CheckResult::new(
        CheckName::Entropy,
        after_s >= before_s - ENTROPY_TOL,
        vec![
            Metric::new("entropy_before", before_s),
            Metric::new("entropy_after", after_s),
            Metric::new("increase", after_s - before_s),
        ],
    ))
}

fn bayes_contrast(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let joint = joint_simultaneous_distribution(&ctx.model, &ctx.psi)?;
    // X: object outcome, Y: pointer reading.
    let transposed: Vec<Vec<f64>> = (0..joint.col_outcomes().len())
        .map(|m| joint.table().iter().map(|row| row[m]).collect())
        .collect();
    let labels = |v: &[f64]| v.iter().map(|a| format!("{a}")).collect::<Vec<_>>();
    let classical = ClassicalJoint::new(
        labels(joint.col_outcomes()),
        labels(joint.row_outcomes()),
        transposed,
    )?;
    let classical_change = classical_nonselective(&classical)?.max_abs_diff(&prior(&classical)?);
    let quantum_change = quantum_nonselective_change(
        ctx.model.object_observable(),
        &DensityOperator::pure(&ctx.psi),
    )?;
    Ok(CheckResult::new(
        CheckName::BayesContrast,
        classical_change <= CLASSICAL_TOL,
        vec![
            Metric::new("classical_max_change", classical_change),
            Metric::new("quantum_frobenius_change", quantum_change),
        ],
    ))
}

fn open_system(ctx: &Context<'_>) -> Result<CheckResult, ScenarioError> {
    let reduced = open_system_nonselective(&ctx.model, &ctx.psi)?;
    let channel = nonselective_channel(
        ctx.model.object_observable(),
        &DensityOperator::pure(&ctx.psi),
    )?;
    let distance = reduced.matrix().frobenius_distance(channel.matrix());
    Ok(CheckResult::new(
        CheckName::OpenSystem,
        distance <= VALIDITY_TOL,
        vec![Metric::new("frobenius_distance", distance)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::stock_scenario;

    fn two_level_with(checks: &[&str]) -> Scenario {
        let mut s = stock_scenario("two-level").unwrap();
        s.checks = checks.iter().map(|c| c.to_string()).collect();
        s
    }

    #[test]
    fn names_round_trip() {
        for name in CheckName::ALL {
            assert_eq!(name.as_str().parse::<CheckName>().unwrap(), name);
        }
        assert!(matches!(
            "nope".parse::<CheckName>(),
            Err(ScenarioError::UnknownCheck(_))
        ));
    }

    #[test]
    fn unknown_check_is_an_error() {
        let s = two_level_with(&["constraint", "teleport"]);
        assert!(matches!(run_checks(&s), Err(ScenarioError::UnknownCheck(n)) if n == "teleport"));
    }

    #[test]
    fn constraint_on_canonical_two_level() {
        let report = run_checks(&two_level_with(&["constraint"])).unwrap();
        let check = &report.checks[0];
        assert!(check.passed);
        assert!(check.metric("residual").unwrap() <= 1e-12);
    }

    #[test]
    fn joint_distribution_table_for_equal_superposition() {
        let report = run_checks(&two_level_with(&["joint-distribution"])).unwrap();
        let table = report.checks[0].table.as_ref().unwrap();
        let probs: Vec<f64> = table.rows.iter().map(|r| r[2]).collect();
        for (got, want) in probs.iter().zip([0.5, 0.0, 0.0, 0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn repeatability_check_records_frequencies() {
        let report = run_checks(&two_level_with(&["repeatability-montecarlo"])).unwrap();
        let check = &report.checks[0];
        assert!(check.passed);
        assert_eq!(check.metric("trials"), Some(10_000.0));
        assert_eq!(check.metric("agreements"), Some(10_000.0));
        assert_eq!(check.metric("seed"), Some(42.0));
        let rows = &check.table.as_ref().unwrap().rows;
        let total: f64 = rows.iter().map(|r| r[1]).sum();
        assert_eq!(total, 10_000.0);
    }

    #[test]
    fn surfaced_residuals_match_kernel_outputs() {
        let s = two_level_with(&["linearity", "constraint"]);
        let report = run_checks(&s).unwrap();
        let model = s.build_model().unwrap();
        let psi = s.initial_state().unwrap();
        assert_eq!(
            report.checks[0].metric("residual").unwrap(),
            verify_linearity(&model, &psi).unwrap()
        );
        assert_eq!(
            report.checks[1].metric("residual").unwrap(),
            model.constraint_residual()
        );
    }

    #[test]
    fn every_check_passes_on_stock_two_level() {
        let names: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
        let report = run_checks(&two_level_with(&names)).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{} failed: {:?}", c.name, c.metrics);
        }
    }
}
