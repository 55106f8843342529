// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

use ensemble_swap::basis::{enumerate_basis, initial_swap_state, AtomicLabel, StateVector};
use ensemble_swap::hamiltonians::{
    build_h_cav, build_h_cla, build_h_i, build_h_nonhermitian, build_h_rotating, frame_transform,
};
use ensemble_swap::oracle::random_params;
use ensemble_swap::propagator::integrator::{integrate_at, Tolerances};
use ensemble_swap::propagator::{
    evolve, evolve_timeseries, integrate_schrodinger, propagate, EvolutionSpec, Method,
};
use ensemble_swap::SystemParams;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let norm = v.norm();
    v / Complex64::from(norm)
}

/// Random `A - i D` with `A` Hermitian and `D` positive semidefinite.
fn random_dissipative(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let a = (&m + m.adjoint()) * Complex64::from(0.5);
    let b = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
    });
    let d = &b * b.adjoint();
    a - d * Complex64::i()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integrator_matches_exponential(seed in any::<u64>(), t in 0.05f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_dissipative(&mut rng, 15);
        let psi = random_state(&mut rng, 15);
        let a = propagate(&h, &psi, t, 1e-10).unwrap();
        let b = integrate_schrodinger(&h, &psi, &[t], 1e-10).unwrap().pop().unwrap();
        prop_assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn evolution_is_linear(seed in any::<u64>(), t in 0.0f64..2.0, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_dissipative(&mut rng, 15);
        let x = random_state(&mut rng, 15);
        let y = random_state(&mut rng, 15);
        let c = Complex64::new(re, im);
        let lhs = propagate(&h, &(&x * c + &y), t, 1e-10).unwrap();
        let rhs = propagate(&h, &x, t, 1e-10).unwrap() * c + propagate(&h, &y, t, 1e-10).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn evolution_is_a_semigroup(seed in any::<u64>(), s in 0.0f64..1.5, t in 0.0f64..1.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_dissipative(&mut rng, 15);
        let x = random_state(&mut rng, 15);
        let joint = propagate(&h, &x, s + t, 1e-10).unwrap();
        let split = propagate(&h, &propagate(&h, &x, s, 1e-10).unwrap(), t, 1e-10).unwrap();
        prop_assert!((joint - split).norm() < 1e-12);
    }

    #[test]
    fn physical_damping_contracts(seed in any::<u64>(), n in 1u64..200) {
        let p = random_params(seed, n, true);
        let b = enumerate_basis(2);
        let h = build_h_nonhermitian(&p, &b);
        let psi = initial_swap_state(&b).unwrap();
        let series = evolve_timeseries(&EvolutionSpec::new(h, 4.0).samples(40), &psi).unwrap();
        let mut prev = psi.norm();
        for (_, s) in &series {
            prop_assert!(s.norm() <= prev + 1e-10);
            prev = s.norm();
        }
    }

    #[test]
    fn hermitian_evolution_is_unitary(seed in any::<u64>(), n in 1u64..10_000) {
        let p = random_params(seed, n, false);
        let b = enumerate_basis(2);
        let psi = initial_swap_state(&b).unwrap();
        let out = evolve(&EvolutionSpec::new(build_h_i(&p, &b), 2.5), &psi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn methods_agree_on_collective_swap() {
    let b = enumerate_basis(2);
    let p = SystemParams::new(50, 0.4, 0.7, 6.0).with_decay(0.05, 0.2);
    let h = build_h_nonhermitian(&p, &b);
    let psi = initial_swap_state(&b).unwrap();
    let spec = EvolutionSpec::new(h, 3.0).samples(7);
    let a = evolve_timeseries(&spec, &psi).unwrap();
    let c = evolve_timeseries(&spec.clone().method(Method::Integrator), &psi).unwrap();
    for ((ta, sa), (tc, sc)) in a.iter().zip(&c) {
        assert_eq!(ta, tc);
        assert!((sa.amplitudes() - sc.amplitudes()).norm() < 1e-8);
    }
}

/// Solving in the drive frame, `i d/dt phi = U^dagger H_cav U phi`, and
/// mapping back with `U = exp(-i H_cla t)` reproduces the lab-frame state.
#[test]
fn rotating_frame_reproduces_lab_frame() {
    let b = enumerate_basis(2);
    let mut p = SystemParams::new(3, 0.8, 0.6, 2.3);
    p.phi = 0.7;
    p.g_b *= Complex64::from_polar(1.0, -0.4);
    let psi0 = initial_swap_state(&b).unwrap();
    let times = [0.4, 1.1, 2.0];

    let lab: Vec<StateVector> = times
        .iter()
        .map(|&t| evolve(&EvolutionSpec::new(build_h_i(&p, &b), t), &psi0).unwrap())
        .collect();

    let minus_i = Complex64::new(0.0, -1.0);
    let rotating = integrate_at(
        |t, y| build_h_rotating(&p, &b, t).matrix() * y * minus_i,
        0.0,
        &times,
        psi0.amplitudes(),
        Tolerances::new(1e-12, 1e-14),
    )
    .unwrap();

    for ((t, phi), want) in times.iter().zip(rotating).zip(&lab) {
        let phi = StateVector::from_amplitudes(&b, phi).unwrap();
        let back = frame_transform(&phi, *t, &p);
        assert!(
            (back.amplitudes() - want.amplitudes()).norm() < 1e-9,
            "t = {t}"
        );
        // G is dark to the drive, so ground populations agree in both frames.
        let g_rot = phi.atomic_population(AtomicLabel::G);
        assert!((g_rot - want.atomic_population(AtomicLabel::G)).abs() < 1e-9);
    }
}

#[test]
fn drive_and_cavity_parts_sum_to_interaction() {
    let b = enumerate_basis(2);
    let p = random_params(11, 17, false);
    let sum = build_h_cav(&p, &b).sum(&build_h_cla(&p, &b)).unwrap();
    assert!((sum.matrix() - build_h_i(&p, &b).matrix()).norm() < 1e-15);
}
