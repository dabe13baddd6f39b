mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use qmeasure::bayes::{classical_nonselective, prior, quantum_contrast_example, ClassicalJoint};
use qmeasure::hilbert::{von_neumann_entropy, DensityOperator, SpectralObservable, StateVector};
use qmeasure::measurement::{
    chain_extend, conditional_state, joint_simultaneous_distribution, luders_update,
    nonselective_channel, open_system_nonselective, pointer_distribution, statistical_formula,
    verify_linearity, verify_repeatability, MeasurementModel, PROBABILITY_FLOOR,
};
use qmeasure::scenario::{
    emit_report, run_checks, stock_scenario, Interpretation, ReportFormat, EVENT_REDUCTION,
};
use rand::Rng;

const TIME_LIMIT: Duration = Duration::from_secs(5);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn models(seed: u64, count: usize) -> Vec<(MeasurementModel, StateVector)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let d = r.random_range(2..=8);
            let model = random_model(&mut r, d);
            let psi = random_state(&mut r, d);
            (model, psi)
        })
        .collect()
}

fn constraint() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let d = r.random_range(2..=8);
        worst = worst.max(random_model(&mut r, d).constraint_residual());
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < TIME_LIMIT,
        format!("max residual {worst:.3e} over 200 models in {elapsed:.2?}"),
    )
}

fn linearity() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for (model, psi) in models(2, 200) {
        worst = worst.max(verify_linearity(&model, &psi).unwrap());
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < TIME_LIMIT,
        format!("max residual {worst:.3e} over 200 pairs in {elapsed:.2?}"),
    )
}

fn statistical() -> Outcome {
    let (mut vs_c, mut vs_formula) = (0.0_f64, 0.0_f64);
    for (model, psi) in models(3, 200) {
        let pointer = pointer_distribution(&model, &psi).unwrap();
        let formula =
            statistical_formula(model.object_observable(), &DensityOperator::pure(&psi)).unwrap();
        for (p, phi) in pointer.probabilities().iter().zip(model.object_basis()) {
            vs_c = vs_c.max((p - phi.inner(&psi).norm_sqr()).abs());
        }
        vs_formula = vs_formula.max(pointer.max_abs_diff(&formula));
    }
    outcome(
        vs_c <= 1e-10 && vs_formula <= 1e-10,
        format!("max |p - |c|^2| {vs_c:.3e}, max |p - Tr[E rho]| {vs_formula:.3e}"),
    )
}

fn repeatability() -> Outcome {
    let mut worst = 0.0_f64;
    for (model, psi) in models(4, 200) {
        worst = worst.max(
            joint_simultaneous_distribution(&model, &psi)
                .unwrap()
                .off_diagonal_mass(),
        );
    }
    let mut agreeing_seeds = 0;
    let mut r = rng(44);
    for seed in 1..=10 {
        let d = r.random_range(2..=8);
        let model = random_model(&mut r, d);
        let psi = random_state(&mut r, d);
        let report = verify_repeatability(&model, &psi, 10_000, seed).unwrap();
        if report.agreements == report.trials && report.trials == 10_000 {
            agreeing_seeds += 1;
        }
    }
    outcome(
        worst <= 1e-12 && agreeing_seeds == 10,
        format!("max off-diagonal mass {worst:.3e}; full agreement at {agreeing_seeds}/10 seeds"),
    )
}

fn conditional() -> Outcome {
    let mut worst = 0.0_f64;
    let mut compared = 0;
    for (model, psi) in models(5, 100) {
        let rho = DensityOperator::pure(&psi);
        let sigma = DensityOperator::pure(model.ready_state());
        let p = pointer_distribution(&model, &psi).unwrap();
        for (n, &pn) in p.probabilities().iter().enumerate() {
            if pn <= PROBABILITY_FLOOR {
                continue;
            }
            let via = conditional_state(&model, &rho, &sigma, n).unwrap();
            let direct = luders_update(model.object_observable(), &rho, n).unwrap();
            worst = worst.max(via.matrix().frobenius_distance(direct.matrix()));
            compared += 1;
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max Frobenius distance {worst:.3e} over {compared} outcomes in 100 cases"),
    )
}

fn open_system() -> Outcome {
    let mut worst = 0.0_f64;
    for (model, psi) in models(6, 100) {
        let open = open_system_nonselective(&model, &psi).unwrap();
        let channel =
            nonselective_channel(model.object_observable(), &DensityOperator::pure(&psi)).unwrap();
        worst = worst.max(open.matrix().frobenius_distance(channel.matrix()));
    }
    outcome(
        worst <= 1e-10,
        format!("max Frobenius distance {worst:.3e} over 100 cases"),
    )
}

/// `Σ cₙ φₙ ⊗ ξₙ ⊗ ξ′ₙ`, entry by entry.
fn chain_oracle(
    model: &MeasurementModel,
    second: &[StateVector],
    psi: &StateVector,
) -> Vec<Complex64> {
    let (m1, m2) = (model.apparatus_dim(), second[0].dim());
    let mut out = vec![Complex64::new(0.0, 0.0); model.object_dim() * m1 * m2];
    for ((phi, xi), eta) in model
        .object_basis()
        .iter()
        .zip(model.pointer_eigenvectors())
        .zip(second)
    {
        let c = phi.inner(psi);
        for (i, a) in phi.amplitudes().iter().enumerate() {
            for (j, b) in xi.amplitudes().iter().enumerate() {
                for (k, e) in eta.amplitudes().iter().enumerate() {
                    out[(i * m1 + j) * m2 + k] += c * a * b * e;
                }
            }
        }
    }
    out
}

fn chain() -> Outcome {
    let mut r = rng(7);
    let (mut worst_state, mut worst_support) = (0.0_f64, 0.0_f64);
    for d in 2..=4 {
        for _ in 0..20 {
            let model = random_model(&mut r, d);
            let psi = random_state(&mut r, d);
            let m2 = d + r.random_range(0..2);
            let second: Vec<StateVector> = random_basis(&mut r, m2).into_iter().take(d).collect();
            let chain = chain_extend(&model, second.clone(), random_state(&mut r, m2)).unwrap();
            let fin = chain.final_state(&psi).unwrap();
            worst_state = worst_state.max(vec_distance(
                fin.amplitudes(),
                &chain_oracle(&model, &second, &psi),
            ));
            let table = chain.outcome_table(&psi).unwrap();
            for (a, plane) in table.iter().enumerate() {
                for (b, row) in plane.iter().enumerate() {
                    for (c, p) in row.iter().enumerate() {
                        if !(a == b && b == c) {
                            worst_support = worst_support.max(p.abs());
                        }
                    }
                }
            }
        }
    }
    outcome(
        worst_state <= 1e-10 && worst_support <= 1e-12,
        format!(
            "max final-state distance {worst_state:.3e}, max off-(n,n,n) entry {worst_support:.3e}"
        ),
    )
}

fn entropy() -> Outcome {
    let mut r = rng(8);
    let mut worst = f64::INFINITY;
    for _ in 0..200 {
        let d = r.random_range(1..=6);
        let obs = random_observable(&mut r, d);
        let rho = random_density(&mut r, d);
        let after = nonselective_channel(&obs, &rho).unwrap();
        worst = worst.min(von_neumann_entropy(&after) - von_neumann_entropy(&rho));
    }
    let obs = SpectralObservable::diagonal(&[1.0, -1.0]).unwrap();
    let psi = StateVector::normalized_real(&[1.0, 1.0]).unwrap();
    let rho = DensityOperator::pure(&psi);
    let increase =
        von_neumann_entropy(&nonselective_channel(&obs, &rho).unwrap()) - von_neumann_entropy(&rho);
    outcome(
        worst >= -1e-8 && increase >= 0.1 && (increase - std::f64::consts::LN_2).abs() <= 1e-8,
        format!(
            "min change {worst:.3e} over 200 states; equal superposition gains {increase:.10} nats"
        ),
    )
}

fn classical() -> Outcome {
    let mut r = rng(9);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let (nx, ny) = (r.random_range(1..=6), r.random_range(1..=6));
        let raw: Vec<Vec<f64>> = (0..nx)
            .map(|_| (0..ny).map(|_| r.random_range(0.0..1.0)).collect())
            .collect();
        let total: f64 = raw.iter().flatten().sum();
        let table = raw
            .into_iter()
            .map(|row| row.into_iter().map(|p| p / total).collect())
            .collect();
        let labels = |p: &str, n: usize| (0..n).map(|k| format!("{p}{k}")).collect::<Vec<_>>();
        let joint = ClassicalJoint::new(labels("x", nx), labels("y", ny), table).unwrap();
        worst = worst.max(
            classical_nonselective(&joint)
                .unwrap()
                .max_abs_diff(&prior(&joint).unwrap()),
        );
    }
    let quantum = quantum_contrast_example().unwrap();
    outcome(
        worst <= 1e-14 && quantum > 0.5,
        format!("max classical change {worst:.3e}; quantum Frobenius change {quantum:.6}"),
    )
}

fn timing() -> Outcome {
    let scenario = stock_scenario("atom-beam-timing").unwrap();
    let first = run_checks(&scenario).unwrap();
    let second = run_checks(&scenario).unwrap();
    let t = &first.timing;
    let reduction = |who: Interpretation| {
        t.timeline
            .iter()
            .find(|e| e.event == EVENT_REDUCTION && e.interpretation == who)
            .map(|e| e.time)
    };
    let (t0, dt, tau) = (0.0, 1e-9, 1e-3);
    let times_ok = reduction(Interpretation::Orthodox) == Some(t0 + dt + tau)
        && reduction(Interpretation::New) == Some(t0 + dt);
    let ratio_ok = (t.ratio - 1e6).abs() <= 1e6 * 1e-12;
    let flags_ok = t.regime_inequality_holds && t.orthodox_postdates_second_measurement;
    let identical = [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Text]
        .into_iter()
        .all(|f| emit_report(&first, f).unwrap() == emit_report(&second, f).unwrap());
    outcome(
        times_ok && ratio_ok && flags_ok && identical,
        format!(
            "reductions at {:?}/{:?}, ratio {:.6e}, flags {}/{}, byte-identical {identical}",
            reduction(Interpretation::New),
            reduction(Interpretation::Orthodox),
            t.ratio,
            t.regime_inequality_holds,
            t.orthodox_postdates_second_measurement,
        ),
    )
}

fn monte_carlo() -> Outcome {
    let scenario = stock_scenario("two-level").unwrap();
    let model = scenario.build_model().unwrap();
    let psi = scenario.initial_state().unwrap();
    let trials = 10_000u64;
    let sigma = 3.0 * (0.25 / trials as f64).sqrt();
    let within = (0..100)
        .filter(|&seed| {
            let report = verify_repeatability(&model, &psi, trials, seed).unwrap();
            (report.first_outcome_frequencies()[0] - 0.5).abs() <= sigma
        })
        .count();
    outcome(
        within >= 99,
        format!("outcome-1 frequency within 3 sigma of 0.5 at {within}/100 seeds"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("measuring unitary constraint", constraint),
        ("linearity of the interaction", linearity),
        ("pointer statistics", statistical),
        ("repeatability", repeatability),
        ("conditional state vs Lüders rule", conditional),
        ("open-system nonselective identity", open_system),
        ("three-system chain", chain),
        ("entropy under nonselective measurement", entropy),
        ("classical contrast", classical),
        ("timing demonstration", timing),
        ("Monte Carlo statistics", monte_carlo),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = check();
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {}", i + 1, result.detail);
        if !result.passed {
            failures += 1;
        }
    }
    println!("{}/11 acceptance criteria passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
