// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Operator matrices on a [`CollectiveBasis`].
//!
//! Collective matrix elements of the cavity coupling (photon factors
//! `sqrt(n)` omitted):
//!
//! | transition    | mode | factor          |
//! |---------------|------|-----------------|
//! | `G -> Phi1`   | a    | `sqrt(N)`       |
//! | `G -> Phi2`   | b    | `sqrt(N)`       |
//! | `Phi1 -> Phi4`| a    | `sqrt(2(N-1))`  |
//! | `Phi1 -> Phi3`| b    | `sqrt(N-1)`     |
//! | `Phi2 -> Phi3`| a    | `sqrt(N-1)`     |
//! | `Phi2 -> Phi5`| b    | `sqrt(2(N-1))`  |
//!
//! and of the drive `omega e^{i phi} |e2><e1| + h.c.`: `Phi1 -> Phi2` with
//! factor 1, `Phi4 -> Phi3` and `Phi3 -> Phi5` with factor `sqrt 2`.
//! Transitions that would leave the basis are dropped.

use std::sync::Arc;

use nalgebra::{DMatrix, Matrix2, Matrix3, Vector2, Vector3};
use num_complex::Complex64;

use crate::basis::{AtomicLabel, BasisLabel, CollectiveBasis, StateVector};
use crate::error::{Error, Result};
use crate::params::SystemParams;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense complex operator over a collective basis.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    basis: Arc<CollectiveBasis>,
    matrix: DMatrix<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    pub fn new(
        basis: &Arc<CollectiveBasis>,
        matrix: DMatrix<Complex64>,
        hermitian: bool,
    ) -> Result<Self> {
        let n = basis.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::BasisMismatch);
        }
        Ok(Self {
            basis: Arc::clone(basis),
            matrix,
            hermitian,
        })
    }

    pub fn zeros(basis: &Arc<CollectiveBasis>) -> Self {
        let n = basis.len();
        Self {
            basis: Arc::clone(basis),
            matrix: DMatrix::zeros(n, n),
            hermitian: true,
        }
    }

    pub fn basis(&self) -> &Arc<CollectiveBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `<row|M|col>` by label; zero when either label is outside the basis.
    pub fn element(&self, row: BasisLabel, col: BasisLabel) -> Complex64 {
        match (self.basis.index_of(&row), self.basis.index_of(&col)) {
            (Some(i), Some(j)) => self.matrix[(i, j)],
            _ => ZERO,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M - M^dagger|` over all elements.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M - M^dagger) / 2i`.
    pub fn anti_hermitian_part(&self) -> DMatrix<Complex64> {
        (&self.matrix - self.matrix.adjoint()) / Complex64::new(0.0, 2.0)
    }

    /// Largest magnitude of any element coupling different excitation sectors.
    pub fn off_sector_max(&self) -> f64 {
        let labels = self.basis.labels();
        let mut worst = 0.0f64;
        for (i, li) in labels.iter().enumerate() {
            for (j, lj) in labels.iter().enumerate() {
                if li.excitation() != lj.excitation() {
                    worst = worst.max(self.matrix[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn sum(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if !self.basis.same_as(&other.basis) {
            return Err(Error::BasisMismatch);
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            matrix: &self.matrix + &other.matrix,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if !self.basis.same_as(state.basis()) {
            return Err(Error::BasisMismatch);
        }
        StateVector::from_amplitudes(&self.basis, &self.matrix * state.amplitudes())
    }

    /// Nonzero elements as rows `row col re im`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                let z = self.matrix[(i, j)];
                if z != ZERO {
                    out.push_str(&format!("{i} {j} {:.17e} {:.17e}\n", z.re, z.im));
                }
            }
        }
        out
    }
}

fn sqrt_u(n: u32) -> f64 {
    f64::from(n).sqrt()
}

/// Collective factor for raising `from` by one excitation on level `e1`
/// (`mode_a`) or `e2`, with the destination label.
fn raise(from: AtomicLabel, mode_a: bool, n_atoms: u64) -> Option<(AtomicLabel, f64)> {
    use AtomicLabel::*;
    let n = n_atoms as f64;
    let single = n.sqrt();
    let mixed = (n - 1.0).max(0.0).sqrt();
    let paired = (2.0 * (n - 1.0)).max(0.0).sqrt();
    match (from, mode_a) {
        (G, true) => Some((Phi1, single)),
        (G, false) => Some((Phi2, single)),
        (Phi1, true) => Some((Phi4, paired)),
        (Phi1, false) => Some((Phi3, mixed)),
        (Phi2, true) => Some((Phi3, mixed)),
        (Phi2, false) => Some((Phi5, paired)),
        _ => None,
    }
}

/// Builds `M + M^dagger` from the lower-triangle transitions produced by `f`.
fn hermitian_from<F>(basis: &Arc<CollectiveBasis>, mut f: F) -> OperatorMatrix
where
    F: FnMut(BasisLabel, &mut dyn FnMut(BasisLabel, Complex64)),
{
    let n = basis.len();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (col, &label) in basis.labels().iter().enumerate() {
        let mut push = |target: BasisLabel, value: Complex64| {
            if let Some(row) = basis.index_of(&target) {
                m[(row, col)] += value;
                m[(col, row)] += value.conj();
            }
        };
        f(label, &mut push);
    }
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: m,
        hermitian: true,
    }
}

/// `sum_j (g_a a |e1_j><g_j| + g_b b |e2_j><g_j|) + h.c.`
pub fn build_h_cav(params: &SystemParams, basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    hermitian_from(basis, |l, push| {
        if l.n_a > 0 {
            if let Some((to, c)) = raise(l.atomic, true, params.n_atoms) {
                push(
                    BasisLabel::new(to, l.n_a - 1, l.n_b),
                    params.g_a * c * sqrt_u(l.n_a),
                );
            }
        }
        if l.n_b > 0 {
            if let Some((to, c)) = raise(l.atomic, false, params.n_atoms) {
                push(
                    BasisLabel::new(to, l.n_a, l.n_b - 1),
                    params.g_b * c * sqrt_u(l.n_b),
                );
            }
        }
    })
}

/// `sum_j omega e^{i phi} |e2_j><e1_j| + h.c.`
pub fn build_h_cla(params: &SystemParams, basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    use AtomicLabel::*;
    let drive = Complex64::from_polar(params.omega, params.phi);
    let s2 = std::f64::consts::SQRT_2;
    hermitian_from(basis, |l, push| {
        let hop = match l.atomic {
            Phi1 => Some((Phi2, 1.0)),
            Phi4 => Some((Phi3, s2)),
            Phi3 => Some((Phi5, s2)),
            _ => None,
        };
        if let Some((to, c)) = hop {
            push(BasisLabel::new(to, l.n_a, l.n_b), drive * c);
        }
    })
}

pub fn build_h_i(params: &SystemParams, basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    let cav = build_h_cav(params, basis);
    let cla = build_h_cla(params, basis);
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: cav.matrix + cla.matrix,
        hermitian: true,
    }
}

/// Diagonal no-jump damping
/// `-(i/2)(gamma_1 n_e1 + gamma_2 n_e2 + kappa_a n_a + kappa_b n_b)`.
pub fn build_decay(params: &SystemParams, basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    let diag = basis.labels().iter().map(|l| {
        let (e1, e2) = l.atomic.occupancy();
        let rate = params.gamma_1 * f64::from(e1)
            + params.gamma_2 * f64::from(e2)
            + params.kappa_a * f64::from(l.n_a)
            + params.kappa_b * f64::from(l.n_b);
        Complex64::new(0.0, -0.5 * rate)
    });
    let d = nalgebra::DVector::from_iterator(basis.len(), diag);
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: DMatrix::from_diagonal(&d),
        hermitian: !params.has_decay(),
    }
}

/// Cavity-only damping on `G`-labelled states, for the effective model.
pub fn build_cavity_decay_ground(
    params: &SystemParams,
    basis: &Arc<CollectiveBasis>,
) -> OperatorMatrix {
    let diag = basis.labels().iter().map(|l| {
        if l.atomic != AtomicLabel::G {
            return ZERO;
        }
        let rate = params.kappa_a * f64::from(l.n_a) + params.kappa_b * f64::from(l.n_b);
        Complex64::new(0.0, -0.5 * rate)
    });
    let d = nalgebra::DVector::from_iterator(basis.len(), diag);
    let lossless = params.kappa_a == 0.0 && params.kappa_b == 0.0;
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: DMatrix::from_diagonal(&d),
        hermitian: lossless,
    }
}

/// `H_I` plus the no-jump damping term.
pub fn build_h_nonhermitian(params: &SystemParams, basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    let h = build_h_i(params, basis);
    let d = build_decay(params, basis);
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: h.matrix + d.matrix,
        hermitian: false,
    }
}

/// `xi = N conj(g_a) g_b e^{-i phi} / omega`.
pub fn effective_coupling(params: &SystemParams) -> Result<Complex64> {
    if params.omega.is_nan() || params.omega <= 0.0 {
        return Err(Error::invalid(
            "omega",
            "effective coupling needs a strictly positive drive",
        ));
    }
    let n = params.n_atoms as f64;
    Ok(params.g_a.conj() * params.g_b * Complex64::from_polar(n / params.omega, -params.phi))
}

/// `-(xi a^dagger b + xi^* b^dagger a)` on `G`-labelled states; zero elsewhere.
pub fn build_h_eff(params: &SystemParams, basis: &Arc<CollectiveBasis>) -> Result<OperatorMatrix> {
    let xi = effective_coupling(params)?;
    Ok(build_h_eff_with(xi, basis))
}

pub fn build_h_eff_with(xi: Complex64, basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    hermitian_from(basis, |l, push| {
        if l.atomic == AtomicLabel::G && l.n_b > 0 {
            let c = -xi * sqrt_u(l.n_a + 1) * sqrt_u(l.n_b);
            push(BasisLabel::ground(l.n_a + 1, l.n_b - 1), c);
        }
    })
}

/// Diagonal operator counting total excitations.
pub fn excitation_operator(basis: &Arc<CollectiveBasis>) -> OperatorMatrix {
    let d = nalgebra::DVector::from_iterator(
        basis.len(),
        basis
            .labels()
            .iter()
            .map(|l| Complex64::new(f64::from(l.excitation()), 0.0)),
    );
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: DMatrix::from_diagonal(&d),
        hermitian: true,
    }
}

/// Applies `exp(-i H_cla t)` using the closed-form exponentials of the
/// drive's atomic blocks: `{Phi1, Phi2}` (eigenvalues `+-omega`) and
/// `{Phi4, Phi3, Phi5}` (eigenvalues `0, +-2 omega`). `G` is dark.
pub fn frame_transform(state: &StateVector, t: f64, params: &SystemParams) -> StateVector {
    use AtomicLabel::*;
    let omega = params.omega;
    if omega == 0.0 || t == 0.0 {
        return state.clone();
    }
    let basis = state.basis();
    let c = Complex64::from_polar(omega, params.phi);
    let i = Complex64::i();
    let s2 = std::f64::consts::SQRT_2;

    // {Phi1, Phi2}: M^2 = omega^2, so exp(-iMt) = cos(wt) - i sin(wt) M / w.
    let m2 = Matrix2::new(ZERO, c.conj(), c, ZERO);
    let u2 = Matrix2::identity() * Complex64::from((omega * t).cos())
        - m2 * (i * (omega * t).sin() / omega);

    // {Phi4, Phi3, Phi5}: M^3 = 4 w^2 M.
    let m3 = Matrix3::new(
        ZERO,
        s2 * c.conj(),
        ZERO,
        s2 * c,
        ZERO,
        s2 * c.conj(),
        ZERO,
        s2 * c,
        ZERO,
    );
    let w2 = 2.0 * omega;
    let u3 = Matrix3::identity() - m3 * (i * (w2 * t).sin() / w2)
        + (m3 * m3) * Complex64::from(((w2 * t).cos() - 1.0) / (w2 * w2));

    let mut out = state.amplitudes().clone();
    for l in basis.labels() {
        let at = |a: AtomicLabel| basis.index_of(&BasisLabel::new(a, l.n_a, l.n_b));
        match l.atomic {
            Phi1 => {
                if let (Some(p1), Some(p2)) = (at(Phi1), at(Phi2)) {
                    let v = u2 * Vector2::new(state.amplitudes()[p1], state.amplitudes()[p2]);
                    out[p1] = v[0];
                    out[p2] = v[1];
                }
            }
            Phi4 => {
                if let (Some(p4), Some(p3), Some(p5)) = (at(Phi4), at(Phi3), at(Phi5)) {
                    let a = state.amplitudes();
                    let v = u3 * Vector3::new(a[p4], a[p3], a[p5]);
                    out[p4] = v[0];
                    out[p3] = v[1];
                    out[p5] = v[2];
                }
            }
            _ => {}
        }
    }
    StateVector::from_amplitudes(basis, out).expect("same basis")
}

/// `exp(-i H_cla t)` as a dense matrix.
pub fn frame_matrix(
    params: &SystemParams,
    basis: &Arc<CollectiveBasis>,
    t: f64,
) -> DMatrix<Complex64> {
    let n = basis.len();
    let mut u = DMatrix::zeros(n, n);
    for j in 0..n {
        let e = StateVector::basis_state(basis, basis.label(j)).expect("label in basis");
        u.set_column(j, frame_transform(&e, t, params).amplitudes());
    }
    u
}

/// Cavity coupling seen from the frame co-rotating with the drive:
/// `exp(i H_cla t) H_cav exp(-i H_cla t)`.
pub fn build_h_rotating(
    params: &SystemParams,
    basis: &Arc<CollectiveBasis>,
    t: f64,
) -> OperatorMatrix {
    let u = frame_matrix(params, basis, t);
    let cav = build_h_cav(params, basis);
    OperatorMatrix {
        basis: Arc::clone(basis),
        matrix: u.adjoint() * cav.matrix * u,
        hermitian: true,
    }
}
