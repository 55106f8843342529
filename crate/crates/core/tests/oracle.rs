// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

use ensemble_swap::basis::{
    enumerate_basis, initial_swap_state, two_photon_bright_state, AtomicLabel, BasisLabel,
};
use ensemble_swap::gates::gate_time;
use ensemble_swap::oracle::{
    compare_dynamics_sampled, embedding_matrix, max_element_deviation, projected_hamiltonian,
    random_params, FullBasis,
};
use ensemble_swap::{Error, SystemParams};
use nalgebra::DMatrix;
use num_complex::Complex64;

#[test]
fn embedding_is_an_isometry() {
    let b = enumerate_basis(2);
    for n in 2..=4 {
        let fb = FullBasis::new(n, 2, 2).unwrap();
        let p = embedding_matrix(&b, &fb).unwrap();
        let gram = p.adjoint() * &p;
        let err = (gram - DMatrix::<Complex64>::identity(b.len(), b.len())).norm();
        assert!(err < 1e-14, "n = {n}: {err}");
    }
}

#[test]
fn elements_match_brute_force() {
    let b = enumerate_basis(2);
    for n in 2..=4u64 {
        for seed in 0..3 {
            for decay in [false, true] {
                let p = random_params(seed, n, decay);
                let dev = max_element_deviation(&p, &b, decay).unwrap();
                assert!(
                    dev <= 1e-12,
                    "n = {n}, seed = {seed}, decay = {decay}: {dev}"
                );
            }
        }
    }
}

/// Spot-checks collective enhancement factors against closed forms.
#[test]
fn enhancement_factors() {
    let b = enumerate_basis(2);
    let n = 4u64;
    let p = SystemParams::new(n, 0.9, 0.3, 1.7);
    let h = projected_hamiltonian(&p, &b, false).unwrap();
    let idx = |a, na, nb| b.index_of(&BasisLabel::new(a, na, nb)).unwrap();
    let nf = n as f64;
    let cases = [
        (
            idx(AtomicLabel::Phi1, 0, 0),
            idx(AtomicLabel::G, 1, 0),
            nf.sqrt() * 0.9,
        ),
        (
            idx(AtomicLabel::Phi2, 0, 0),
            idx(AtomicLabel::G, 0, 1),
            nf.sqrt() * 0.3,
        ),
        (
            idx(AtomicLabel::Phi4, 0, 0),
            idx(AtomicLabel::Phi1, 1, 0),
            (2.0 * (nf - 1.0)).sqrt() * 0.9,
        ),
        (
            idx(AtomicLabel::Phi3, 0, 0),
            idx(AtomicLabel::Phi1, 0, 1),
            (nf - 1.0).sqrt() * 0.3,
        ),
        (
            idx(AtomicLabel::Phi1, 1, 0),
            idx(AtomicLabel::G, 2, 0),
            (2.0 * nf).sqrt() * 0.9,
        ),
        (
            idx(AtomicLabel::Phi2, 0, 0),
            idx(AtomicLabel::Phi1, 0, 0),
            1.7,
        ),
        (
            idx(AtomicLabel::Phi3, 0, 0),
            idx(AtomicLabel::Phi4, 0, 0),
            2f64.sqrt() * 1.7,
        ),
    ];
    for (row, col, want) in cases {
        let got = h[(row, col)];
        assert!(
            (got - Complex64::from(want)).norm() < 1e-12,
            "({row}, {col}): {got} vs {want}"
        );
    }
}

#[test]
fn trajectories_match_for_small_ensembles() {
    let b = enumerate_basis(2);
    let inputs = [
        initial_swap_state(&b).unwrap(),
        two_photon_bright_state(&b).unwrap(),
    ];
    // n = 4 needs 729-dimensional exponentials; one damped case suffices.
    let cases = [(2, false), (2, true), (3, false), (3, true), (4, true)];
    for (n, decay) in cases {
        let p = random_params(100 + n, n, decay);
        let t = gate_time(&p).unwrap();
        for psi in inputs.iter().take(if n == 4 { 1 } else { 2 }) {
            let c = compare_dynamics_sampled(&p, t, psi, 1e-10, 8).unwrap();
            assert!(
                c.max_deviation <= 1e-8,
                "n = {n}, decay = {decay}: {}",
                c.max_deviation
            );
            assert!(c.max_leakage <= 1e-10);
        }
    }
}

#[test]
fn atom_count_must_agree() {
    let b = enumerate_basis(2);
    let p = random_params(1, 3, false);
    let err = max_element_deviation(&SystemParams { n_atoms: 5, ..p }, &b, false);
    assert!(err.is_ok(), "projection builds its own basis");
    let fb = FullBasis::new(2, 2, 2).unwrap();
    let r = ensemble_swap::oracle::build_full_h(&p, &fb, false);
    assert!(matches!(r, Err(Error::AtomCountMismatch { .. })));
}

#[test]
fn oversized_tensor_product_is_refused() {
    assert!(matches!(
        FullBasis::new(12, 2, 2),
        Err(Error::DimensionOverflow { .. })
    ));
}
