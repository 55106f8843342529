// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Runs without the test harness so every criterion
//! prints its own PASS/FAIL line; exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ensemble_swap::basis::{enumerate_basis, initial_swap_state, BasisLabel, StateVector};
use ensemble_swap::experiments::{
    physical_units_report, rwa_convergence, sweep_g_over_kappa, PhysicalInputs, SweepSpec,
};
use ensemble_swap::gates::{conversion_curve, gate_operator, gate_time, truth_table, Backend};
use ensemble_swap::hamiltonians::{build_h_eff, effective_coupling};
use ensemble_swap::oracle::{compare_dynamics_sampled, max_element_deviation, random_params};
use ensemble_swap::propagator::{evolve_timeseries, EvolutionSpec};
use ensemble_swap::SystemParams;
use num_complex::Complex64;

/// `(g/kappa, fidelity, p_loss)` from the first certified sweep.
const FIG2_BASELINE: [(f64, f64, f64); 5] = [
    (1.0, 0.9874355906113371, 0.1400813276612316),
    (2.0, 0.9895234856129522, 0.07410837502367962),
    (5.0, 0.9900478766486628, 0.030688444991523456),
    (10.0, 0.990100674264547, 0.015524511748004621),
    (20.0, 0.9901041736497432, 0.007807919015792253),
];

const NORM_TOLERANCE: f64 = 1e-10;
const NORM_SAMPLES: usize = 200;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// Largest increase of the norm between consecutive samples.
fn max_norm_increase(series: &[(f64, StateVector)], start: f64) -> f64 {
    let mut prev = start;
    let mut worst = f64::NEG_INFINITY;
    for (_, s) in series {
        worst = worst.max(s.norm() - prev);
        prev = s.norm();
    }
    worst
}

/// Dissipative runs whose norms criterion 8 inspects.
#[derive(Default)]
struct NormLog {
    runs: usize,
    worst: f64,
}

impl NormLog {
    fn record(&mut self, params: &SystemParams, backend: Backend, t: f64) {
        let b = enumerate_basis(2);
        let h = gate_operator(params, &b, backend, true).expect("operator");
        let psi = initial_swap_state(&b).unwrap();
        let series = evolve_timeseries(&EvolutionSpec::new(h, t).samples(NORM_SAMPLES), &psi)
            .expect("evolution");
        let inc = max_norm_increase(&series, psi.norm());
        self.worst = if self.runs == 0 {
            inc
        } else {
            self.worst.max(inc)
        };
        self.runs += 1;
    }
}

fn ideal_truth_table() -> Outcome {
    let p = SystemParams::reference(1.0).without_decay();
    let t = gate_time(&p).unwrap();
    let table = truth_table(&p, Backend::Effective, t).unwrap();
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let expected = [
        ((0, 0), BasisLabel::ground(0, 0), one),
        ((0, 1), BasisLabel::ground(1, 0), i),
        ((1, 0), BasisLabel::ground(0, 1), i),
        ((1, 1), BasisLabel::ground(1, 1), -one),
    ];
    let mut err = 0.0f64;
    for (input, label, amp) in expected {
        for (l, z) in table[&input].iter() {
            let want = if l == label {
                amp
            } else {
                Complex64::new(0.0, 0.0)
            };
            err = err.max((z - want).norm());
        }
    }
    Outcome::new(err <= 1e-9, format!("max amplitude error {err:.2e}"))
}

fn coupling_constant() -> Outcome {
    let mut worst = 0.0f64;
    for g in [1.0, 0.37, 2.0 * PI * 16e6] {
        let xi = effective_coupling(&SystemParams::reference(g)).unwrap();
        worst = worst.max((xi - Complex64::from(10.0 * g)).norm() / (10.0 * g));
    }
    Outcome::new(
        worst <= 4.0 * f64::EPSILON,
        format!("max |xi - 10g| / 10g = {worst:.2e}"),
    )
}

fn gate_time_ns() -> Outcome {
    let r = physical_units_report(&PhysicalInputs::reference()).unwrap();
    let ns = r.gate_time * 1e9;
    let rel = (ns - 1.6).abs() / 1.6;
    Outcome::new(
        rel <= 0.05 && (r.xi_over_g - 10.0).abs() < 1e-12,
        format!("gate_time = {ns:.4} ns ({:.2}% from 1.6 ns)", rel * 100.0),
    )
}

fn oracle_equivalence(norms: &mut NormLog) -> Outcome {
    let b = enumerate_basis(2);
    let psi = initial_swap_state(&b).unwrap();
    let (mut traj, mut elem) = (0.0f64, 0.0f64);
    for n in [2u64, 3] {
        for decay in [false, true] {
            for seed in 0..4 {
                let p = random_params(1000 * n + seed, n, decay);
                let t = gate_time(&p).unwrap();
                let c = compare_dynamics_sampled(&p, t, &psi, 1e-10, 32).unwrap();
                traj = traj.max(c.max_deviation);
                elem = elem.max(max_element_deviation(&p, &b, decay).unwrap());
                if decay {
                    norms.record(&p, Backend::Full, t);
                }
            }
        }
    }
    Outcome::new(
        traj <= 1e-8 && elem <= 1e-12,
        format!("trajectory {traj:.2e}, elements {elem:.2e}"),
    )
}

fn rwa_convergence_check() -> Outcome {
    let report = rwa_convergence(&[5.0, 10.0, 20.0, 40.0]).unwrap();
    let monotone = report
        .rows
        .windows(2)
        .all(|w| w[1].infidelity < w[0].infidelity);
    let at20 = report.rows[2].infidelity;
    let list: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("{:.3e}", r.infidelity))
        .collect();
    Outcome::new(
        monotone && at20 < 1e-2,
        format!("infidelity [{}], ratio 20: {at20:.4e}", list.join(", ")),
    )
}

fn fig2_sweep(norms: &mut NormLog) -> Outcome {
    let grid: Vec<f64> = vec![
        1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0,
    ];
    let spec = SweepSpec::g_over_kappa(grid);
    let rows = sweep_g_over_kappa(&spec).unwrap();
    let loss_down = rows.windows(2).all(|w| w[1].p_loss < w[0].p_loss);
    let drops: Vec<String> = rows
        .windows(2)
        .filter(|w| w[1].fidelity < w[0].fidelity)
        .map(|w| {
            format!(
                "{}->{}: {:.2e}",
                w[0].g_over_kappa,
                w[1].g_over_kappa,
                w[1].fidelity - w[0].fidelity
            )
        })
        .collect();
    let fid_up = drops.is_empty();
    let min_f = rows
        .iter()
        .map(|r| r.fidelity)
        .fold(f64::INFINITY, f64::min);

    let mut baseline_dev = 0.0f64;
    for (x, f, l) in FIG2_BASELINE {
        let r = rows
            .iter()
            .find(|r| r.g_over_kappa == x)
            .expect("grid point");
        baseline_dev = baseline_dev
            .max(((r.fidelity - f) / f).abs())
            .max(((r.p_loss - l) / l).abs());
    }
    for &x in &spec.grid {
        let p = ensemble_swap::experiments::g_over_kappa_point(&spec.template, x);
        norms.record(&p, Backend::Full, gate_time(&p).unwrap());
    }
    Outcome::new(
        loss_down && fid_up && min_f > 0.9 && baseline_dev <= 1e-8,
        format!(
            "p_loss decreasing: {loss_down}, fidelity non-decreasing: {fid_up}{}, min fidelity {min_f:.6}, \
             baseline drift {baseline_dev:.1e}",
            if fid_up { String::new() } else { format!(" (drops {})", drops.join(", ")) }
        ),
    )
}

/// Least-squares fit of `cos(w t)` to `(t, y)` by Gauss-Newton, seeded from a
/// coarse scan over `[lo, hi]`.
fn fit_cosine_frequency(samples: &[(f64, f64)], lo: f64, hi: f64) -> f64 {
    let cost = |w: f64| {
        samples
            .iter()
            .map(|(t, y)| (y - (w * t).cos()).powi(2))
            .sum::<f64>()
    };
    let mut w = (0..=2000)
        .map(|k| lo + (hi - lo) * k as f64 / 2000.0)
        .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
        .unwrap();
    for _ in 0..50 {
        let (mut jtj, mut jtr) = (0.0, 0.0);
        for (t, y) in samples {
            let r = y - (w * t).cos();
            let j = t * (w * t).sin();
            jtj += j * j;
            jtr += j * r;
        }
        let step = -jtr / jtj;
        w += step;
        if step.abs() <= 1e-15 * w.abs() {
            break;
        }
    }
    w
}

fn conversion_analytics() -> Outcome {
    let p = SystemParams::reference(1.0).without_decay();
    let xi = effective_coupling(&p).unwrap().norm();
    let period = PI / xi;
    let times: Vec<f64> = (1..=20).map(|k| k as f64 * period / 20.0 * 1.37).collect();
    let eff = conversion_curve(&p, Backend::Effective, &times).unwrap();
    let conv_err = times
        .iter()
        .zip(&eff)
        .map(|(t, e)| (e - (xi * t).sin().powi(2)).abs())
        .fold(0.0, f64::max);

    let b = enumerate_basis(2);
    let h = build_h_eff(&p, &b).unwrap();
    let psi = StateVector::basis_state(&b, BasisLabel::ground(1, 1)).unwrap();
    let series = evolve_timeseries(&EvolutionSpec::new(h, 3.0 * period).samples(90), &psi).unwrap();
    let samples: Vec<(f64, f64)> = series
        .iter()
        .map(|(t, s)| (*t, s.amplitude(BasisLabel::ground(1, 1)).re))
        .collect();
    let w = fit_cosine_frequency(&samples, 0.5 * xi, 4.0 * xi);
    let rel = (w - 2.0 * xi).abs() / (2.0 * xi);
    Outcome::new(
        conv_err <= 1e-9 && rel <= 1e-6,
        format!("sin^2 error {conv_err:.2e}, |11> frequency / 2xi - 1 = {rel:.2e}"),
    )
}

fn main() -> ExitCode {
    let mut norms = NormLog::default();
    type Check<'a> = Box<dyn FnMut(&mut NormLog) -> Outcome + 'a>;
    let criteria: Vec<(&str, Duration, Check)> = vec![
        (
            "1 ideal truth table",
            Duration::from_secs(1),
            Box::new(|_| ideal_truth_table()),
        ),
        (
            "2 effective coupling xi = 10g",
            Duration::from_secs(1),
            Box::new(|_| coupling_constant()),
        ),
        (
            "3 gate time ~1.6 ns",
            Duration::from_secs(1),
            Box::new(|_| gate_time_ns()),
        ),
        (
            "4 oracle equivalence",
            Duration::from_secs(60),
            Box::new(oracle_equivalence),
        ),
        (
            "5 RWA convergence",
            Duration::from_secs(60),
            Box::new(|_| rwa_convergence_check()),
        ),
        (
            "6 g/kappa sweep",
            Duration::from_secs(120),
            Box::new(fig2_sweep),
        ),
        (
            "7 conversion analytics",
            Duration::from_secs(10),
            Box::new(|_| conversion_analytics()),
        ),
    ];

    let mut failed = 0;
    for (name, limit, mut check) in criteria {
        let start = Instant::now();
        let out = check(&mut norms);
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= limit;
        failed += usize::from(!pass);
        println!(
            "criterion {name}: {} ({}; {:.3} s, limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }

    let pass = norms.runs > 0 && norms.worst <= NORM_TOLERANCE;
    failed += usize::from(!pass);
    println!(
        "criterion 8 dissipative contraction: {} (largest norm increase {:.2e} over {} damped runs x {} samples)",
        if pass { "PASS" } else { "FAIL" },
        norms.worst,
        norms.runs,
        NORM_SAMPLES
    );

    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
