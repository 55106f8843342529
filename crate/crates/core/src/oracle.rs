// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference model: `n` distinguishable three-level atoms and two
//! truncated photon modes, with every per-atom term written out.
//!
//! Used to certify the collective matrix elements and the claim that uniform
//! couplings never take a symmetric state out of the symmetric subspace.
//! Dimensions grow as `3^n`, so this is for small `n` only.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{AtomicLabel, CollectiveBasis, StateVector};
use crate::error::{Error, Result};
use crate::hamiltonians::build_h_nonhermitian;
use crate::params::SystemParams;
use crate::propagator;

pub const MAX_FULL_DIMENSION: usize = 100_000;

/// Per-atom level, encoded as a base-3 digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    G = 0,
    E1 = 1,
    E2 = 2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullBasis {
    n_atoms: usize,
    cutoff_a: u32,
    cutoff_b: u32,
}

impl FullBasis {
    pub fn new(n_atoms: usize, cutoff_a: u32, cutoff_b: u32) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::invalid("n_atoms", "must be at least 1"));
        }
        let fb = Self {
            n_atoms,
            cutoff_a,
            cutoff_b,
        };
        let dim = 3usize
            .checked_pow(n_atoms as u32)
            .and_then(|a| a.checked_mul((cutoff_a as usize + 1) * (cutoff_b as usize + 1)));
        match dim {
            Some(d) if d <= MAX_FULL_DIMENSION => Ok(fb),
            Some(d) => Err(Error::DimensionOverflow {
                dim: d,
                limit: MAX_FULL_DIMENSION,
            }),
            None => Err(Error::DimensionOverflow {
                dim: usize::MAX,
                limit: MAX_FULL_DIMENSION,
            }),
        }
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    fn photon_states(&self) -> usize {
        (self.cutoff_a as usize + 1) * (self.cutoff_b as usize + 1)
    }

    fn atomic_states(&self) -> usize {
        3usize.pow(self.n_atoms as u32)
    }

    pub fn dim(&self) -> usize {
        self.atomic_states() * self.photon_states()
    }

    /// Atom 0 is the most significant base-3 digit.
    pub fn index(&self, levels: &[Level], n_a: u32, n_b: u32) -> usize {
        debug_assert_eq!(levels.len(), self.n_atoms);
        let code = levels.iter().fold(0usize, |acc, l| acc * 3 + *l as usize);
        self.index_code(code, n_a, n_b)
    }

    fn index_code(&self, atomic_code: usize, n_a: u32, n_b: u32) -> usize {
        atomic_code * self.photon_states()
            + n_a as usize * (self.cutoff_b as usize + 1)
            + n_b as usize
    }

    fn decode(&self, index: usize) -> (Vec<Level>, u32, u32) {
        let ps = self.photon_states();
        let mut code = index / ps;
        let photons = index % ps;
        let n_a = (photons / (self.cutoff_b as usize + 1)) as u32;
        let n_b = (photons % (self.cutoff_b as usize + 1)) as u32;
        let mut levels = vec![Level::G; self.n_atoms];
        for slot in levels.iter_mut().rev() {
            *slot = match code % 3 {
                0 => Level::G,
                1 => Level::E1,
                _ => Level::E2,
            };
            code /= 3;
        }
        (levels, n_a, n_b)
    }
}

#[derive(Debug, Clone)]
pub struct FullOperator {
    pub basis: FullBasis,
    pub matrix: DMatrix<Complex64>,
    pub hermitian: bool,
}

fn check_atoms(params: &SystemParams, fb: &FullBasis) -> Result<()> {
    if params.n_atoms != fb.n_atoms as u64 {
        return Err(Error::AtomCountMismatch {
            collective: params.n_atoms,
            full: fb.n_atoms,
        });
    }
    Ok(())
}

/// Per-atom sum of cavity couplings and drive, plus optional no-jump damping.
pub fn build_full_h(
    params: &SystemParams,
    fb: &FullBasis,
    include_decay: bool,
) -> Result<FullOperator> {
    check_atoms(params, fb)?;
    let dim = fb.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let drive = Complex64::from_polar(params.omega, params.phi);
    let couple = |m: &mut DMatrix<Complex64>, row: usize, col: usize, v: Complex64| {
        m[(row, col)] += v;
        m[(col, row)] += v.conj();
    };

    for col in 0..dim {
        let (levels, n_a, n_b) = fb.decode(col);
        for j in 0..fb.n_atoms {
            let mut to = levels.clone();
            match levels[j] {
                Level::G => {
                    if n_a > 0 {
                        to[j] = Level::E1;
                        let row = fb.index(&to, n_a - 1, n_b);
                        couple(&mut m, row, col, params.g_a * f64::from(n_a).sqrt());
                    }
                    if n_b > 0 {
                        to[j] = Level::E2;
                        let row = fb.index(&to, n_a, n_b - 1);
                        couple(&mut m, row, col, params.g_b * f64::from(n_b).sqrt());
                    }
                }
                Level::E1 => {
                    to[j] = Level::E2;
                    let row = fb.index(&to, n_a, n_b);
                    couple(&mut m, row, col, drive);
                }
                Level::E2 => {}
            }
        }
        if include_decay {
            let e1 = levels.iter().filter(|l| **l == Level::E1).count() as f64;
            let e2 = levels.iter().filter(|l| **l == Level::E2).count() as f64;
            let rate = params.gamma_1 * e1
                + params.gamma_2 * e2
                + params.kappa_a * f64::from(n_a)
                + params.kappa_b * f64::from(n_b);
            m[(col, col)] += Complex64::new(0.0, -0.5 * rate);
        }
    }
    Ok(FullOperator {
        basis: *fb,
        matrix: m,
        hermitian: !(include_decay && params.has_decay()),
    })
}

/// Atomic part of a collective label as `(atomic code, amplitude)` terms.
fn collective_terms(atomic: AtomicLabel, n: usize) -> Vec<(usize, f64)> {
    let place = |digits: &[(usize, Level)]| -> usize {
        let mut levels = vec![Level::G; n];
        for &(pos, l) in digits {
            levels[pos] = l;
        }
        levels.iter().fold(0usize, |acc, l| acc * 3 + *l as usize)
    };
    let nf = n as f64;
    let singles = |l: Level| -> Vec<(usize, f64)> {
        (0..n)
            .map(|i| (place(&[(i, l)]), 1.0 / nf.sqrt()))
            .collect()
    };
    let pairs = |l1: Level, l2: Level, norm: f64| -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        for i in 0..n {
            for k in 0..n {
                if i != k {
                    out.push((place(&[(i, l1), (k, l2)]), norm));
                }
            }
        }
        out
    };
    let ordered = (nf * (nf - 1.0)).sqrt();
    match atomic {
        AtomicLabel::G => vec![(0, 1.0)],
        AtomicLabel::Phi1 => singles(Level::E1),
        AtomicLabel::Phi2 => singles(Level::E2),
        AtomicLabel::Phi3 => pairs(Level::E1, Level::E2, 1.0 / ordered),
        AtomicLabel::Phi4 => pairs(Level::E1, Level::E1, 1.0 / (2f64.sqrt() * ordered)),
        AtomicLabel::Phi5 => pairs(Level::E2, Level::E2, 1.0 / (2f64.sqrt() * ordered)),
    }
}

/// Columns are the full-space images of the collective basis states.
pub fn embedding_matrix(
    basis: &Arc<CollectiveBasis>,
    fb: &FullBasis,
) -> Result<DMatrix<Complex64>> {
    let mut p = DMatrix::<Complex64>::zeros(fb.dim(), basis.len());
    for (col, l) in basis.labels().iter().enumerate() {
        if l.n_a > fb.cutoff_a {
            return Err(Error::PhotonCutoff {
                photons: l.n_a,
                cutoff: fb.cutoff_a,
            });
        }
        if l.n_b > fb.cutoff_b {
            return Err(Error::PhotonCutoff {
                photons: l.n_b,
                cutoff: fb.cutoff_b,
            });
        }
        for (code, amp) in collective_terms(l.atomic, fb.n_atoms) {
            p[(fb.index_code(code, l.n_a, l.n_b), col)] += Complex64::from(amp);
        }
    }
    Ok(p)
}

/// Expands a collective state into the explicit symmetrized sum over atoms.
pub fn embed(
    state: &StateVector,
    params: &SystemParams,
    fb: &FullBasis,
) -> Result<DVector<Complex64>> {
    check_atoms(params, fb)?;
    let p = embedding_matrix(state.basis(), fb)?;
    Ok(p * state.amplitudes())
}

/// `P^dagger H_full P` on the collective basis.
pub fn projected_hamiltonian(
    params: &SystemParams,
    basis: &Arc<CollectiveBasis>,
    include_decay: bool,
) -> Result<DMatrix<Complex64>> {
    let c = basis.max_excitation();
    let fb = FullBasis::new(params.n_atoms as usize, c, c)?;
    let h = build_full_h(params, &fb, include_decay)?;
    let p = embedding_matrix(basis, &fb)?;
    Ok(p.adjoint() * h.matrix * p)
}

/// Largest element-wise difference between the collective `H_I` (plus
/// damping if requested) and the projected brute-force operator.
pub fn max_element_deviation(
    params: &SystemParams,
    basis: &Arc<CollectiveBasis>,
    include_decay: bool,
) -> Result<f64> {
    let projected = projected_hamiltonian(params, basis, include_decay)?;
    let collective = if include_decay {
        build_h_nonhermitian(params, basis).into_matrix()
    } else {
        crate::hamiltonians::build_h_i(params, basis).into_matrix()
    };
    Ok((projected - collective)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicsComparison {
    /// `max_k |embed(psi_coll(t_k)) - psi_full(t_k)|`.
    pub max_deviation: f64,
    /// `max_k |(1 - P P^dagger) psi_full(t_k)|`.
    pub max_leakage: f64,
}

pub const DEFAULT_COMPARISON_SAMPLES: usize = 16;

/// Evolves `psi0` in the collective model and its embedding in the full
/// model, with damping whenever `params` has nonzero rates.
pub fn compare_dynamics(
    params: &SystemParams,
    t: f64,
    psi0: &StateVector,
    tolerance: f64,
) -> Result<f64> {
    Ok(
        compare_dynamics_sampled(params, t, psi0, tolerance, DEFAULT_COMPARISON_SAMPLES)?
            .max_deviation,
    )
}

pub fn compare_dynamics_sampled(
    params: &SystemParams,
    t: f64,
    psi0: &StateVector,
    tolerance: f64,
    samples: usize,
) -> Result<DynamicsComparison> {
    params.validate()?;
    let basis = psi0.basis();
    let c = basis.max_excitation();
    let fb = FullBasis::new(params.n_atoms as usize, c, c)?;
    let include_decay = params.has_decay();
    let h_full = build_full_h(params, &fb, include_decay)?;
    let h_coll = build_h_nonhermitian(params, basis);
    let p = embedding_matrix(basis, &fb)?;
    let full0 = &p * psi0.amplitudes();

    let coll =
        propagator::propagate_samples(h_coll.matrix(), psi0.amplitudes(), t, samples, tolerance)?;
    let full = propagator::propagate_samples(&h_full.matrix, &full0, t, samples, tolerance)?;

    let mut max_deviation = 0.0f64;
    let mut max_leakage = 0.0f64;
    for ((_, vc), (_, vf)) in coll.iter().zip(&full) {
        max_deviation = max_deviation.max((&p * vc - vf).norm());
        let projected = &p * (p.adjoint() * vf);
        max_leakage = max_leakage.max((vf - projected).norm());
    }
    Ok(DynamicsComparison {
        max_deviation,
        max_leakage,
    })
}

/// Random uniform-coupling parameters for `n_atoms`, with unit-scale
/// complex couplings, a drive of comparable size, and optional damping.
pub fn random_params(seed: u64, n_atoms: u64, with_decay: bool) -> SystemParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = SystemParams::new(n_atoms, 0.0, 0.0, 0.0);
    p.g_a = Complex64::from_polar(rng.gen_range(0.3..1.5), rng.gen_range(-3.1..3.1));
    p.g_b = Complex64::from_polar(rng.gen_range(0.3..1.5), rng.gen_range(-3.1..3.1));
    p.omega = rng.gen_range(0.5..4.0);
    p.phi = rng.gen_range(-3.1..3.1);
    if with_decay {
        p.kappa_a = rng.gen_range(0.01..0.5);
        p.kappa_b = rng.gen_range(0.01..0.5);
        p.gamma_1 = rng.gen_range(0.01..0.5);
        p.gamma_2 = rng.gen_range(0.01..0.5);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{enumerate_basis, BasisLabel};

    #[test]
    fn dimensions() {
        assert_eq!(FullBasis::new(1, 1, 1).unwrap().dim(), 12);
        assert_eq!(FullBasis::new(3, 2, 2).unwrap().dim(), 243);
        assert!(matches!(
            FullBasis::new(10, 2, 2),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn index_round_trip() {
        let fb = FullBasis::new(3, 2, 1).unwrap();
        for i in 0..fb.dim() {
            let (levels, n_a, n_b) = fb.decode(i);
            assert_eq!(fb.index(&levels, n_a, n_b), i);
        }
    }

    #[test]
    fn zero_couplings_leave_only_damping() {
        let p = SystemParams::new(2, 0.0, 0.0, 0.0).with_decay(0.3, 0.2);
        let fb = FullBasis::new(2, 2, 2).unwrap();
        let h = build_full_h(&p, &fb, true).unwrap();
        let off = &h.matrix - DMatrix::from_diagonal(&h.matrix.diagonal());
        assert_eq!(off.norm(), 0.0);
        assert!(h
            .matrix
            .diagonal()
            .iter()
            .all(|z| z.re == 0.0 && z.im <= 0.0));
        let h0 = build_full_h(&p, &fb, false).unwrap();
        assert_eq!(h0.matrix.norm(), 0.0);
    }

    #[test]
    fn embed_vacuum_and_w_state() {
        let b = enumerate_basis(2);
        let p = SystemParams::new(2, 1.0, 1.0, 1.0);
        let fb = FullBasis::new(2, 2, 2).unwrap();
        let vac = StateVector::basis_state(&b, BasisLabel::ground(0, 0)).unwrap();
        let v = embed(&vac, &p, &fb).unwrap();
        assert_eq!(
            v[fb.index(&[Level::G, Level::G], 0, 0)],
            Complex64::new(1.0, 0.0)
        );
        assert!((v.norm() - 1.0).abs() < 1e-15);

        let w = StateVector::basis_state(&b, BasisLabel::new(AtomicLabel::Phi1, 0, 0)).unwrap();
        let v = embed(&w, &p, &fb).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[fb.index(&[Level::E1, Level::G], 0, 0)].re - h).abs() < 1e-15);
        assert!((v[fb.index(&[Level::G, Level::E1], 0, 0)].re - h).abs() < 1e-15);
    }

    #[test]
    fn embedding_is_an_isometry() {
        // For n = 3 the Phi4 vector is a sum of 6 ordered pairs with prefactor
        // 1/sqrt(12): each of the 3 pair configurations carries 2/sqrt(12),
        // so the squared norm is 3 * 4/12 = 1.
        for n in 2..=4 {
            let b = enumerate_basis(2);
            let fb = FullBasis::new(n, 2, 2).unwrap();
            let p = embedding_matrix(&b, &fb).unwrap();
            let gram = p.adjoint() * &p;
            let id = DMatrix::<Complex64>::identity(b.len(), b.len());
            assert!((gram - id).norm() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn printed_pair_normalization_is_not_unit() {
        // With prefactor 1/sqrt(N(N-1)) the identical-level pair state has
        // norm sqrt 2 at every N >= 2.
        for n in 2..=4 {
            let terms = collective_terms(AtomicLabel::Phi4, n);
            let fb = FullBasis::new(n, 0, 0).unwrap();
            let mut v = DVector::<Complex64>::zeros(fb.dim());
            let nf = n as f64;
            for (code, _) in terms {
                v[code] += Complex64::from(1.0 / (nf * (nf - 1.0)).sqrt());
            }
            assert!((v.norm() - 2f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn atom_count_mismatch() {
        let fb = FullBasis::new(2, 2, 2).unwrap();
        let p = SystemParams::new(3, 1.0, 1.0, 1.0);
        assert!(matches!(
            build_full_h(&p, &fb, false),
            Err(Error::AtomCountMismatch { .. })
        ));
        let b = enumerate_basis(2);
        let s = crate::basis::initial_swap_state(&b).unwrap();
        assert!(embed(&s, &p, &fb).is_err());
    }

    #[test]
    fn photon_cutoff_enforced() {
        let b = enumerate_basis(2);
        let fb = FullBasis::new(2, 1, 1).unwrap();
        assert!(matches!(
            embedding_matrix(&b, &fb),
            Err(Error::PhotonCutoff { .. })
        ));
    }

    #[test]
    fn zero_couplings_have_no_deviation() {
        let b = enumerate_basis(2);
        let p = SystemParams::new(2, 0.0, 0.0, 0.0);
        let s = crate::basis::initial_swap_state(&b).unwrap();
        assert_eq!(compare_dynamics(&p, 2.0, &s, 1e-10).unwrap(), 0.0);
    }
}
