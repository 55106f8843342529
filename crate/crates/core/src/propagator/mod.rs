// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Evolution `psi(t) = exp(-i H t) psi(0)` under time-independent,
//! possibly non-Hermitian operators.
//!
//! The default backend is the matrix exponential. Every call also computes
//! the result through two half-length propagators and fails if the two
//! routes disagree by more than the requested tolerance (measured relative
//! to `|psi(0)|`). That comparison cannot beat floating-point phase
//! resolution, so the effective threshold is raised to
//! `ROUNDOFF * (1 + |H|_1 t)` for very long or stiff evolutions.

mod expm;
pub mod integrator;

pub use expm::expm;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::basis::StateVector;
use crate::error::{Error, Result};
use crate::hamiltonians::OperatorMatrix;
use integrator::Tolerances;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
const MAX_TOLERANCE: f64 = 1e-4;
const ROUNDOFF: f64 = 64.0 * f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Exponential,
    Integrator,
}

#[derive(Debug, Clone)]
pub struct EvolutionSpec {
    pub operator: OperatorMatrix,
    pub duration: f64,
    pub sample_count: usize,
    pub tolerance: f64,
    pub method: Method,
}

impl EvolutionSpec {
    pub fn new(operator: OperatorMatrix, duration: f64) -> Self {
        Self {
            operator,
            duration,
            sample_count: 1,
            tolerance: DEFAULT_TOLERANCE,
            method: Method::Exponential,
        }
    }

    pub fn samples(mut self, sample_count: usize) -> Self {
        self.sample_count = sample_count;
        self
    }

    pub fn tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration.is_finite() && self.duration >= 0.0) {
            return Err(Error::invalid("duration", "must be finite and >= 0"));
        }
        if self.sample_count == 0 {
            return Err(Error::invalid("sample_count", "must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance <= MAX_TOLERANCE) {
            return Err(Error::invalid("tolerance", "must lie in (0, 1e-4]"));
        }
        check_finite_matrix(self.operator.matrix())
    }
}

fn check_finite_matrix(m: &DMatrix<Complex64>) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("operator matrix".into()))
    }
}

fn check_finite_vector(v: &DVector<Complex64>, what: &str) -> Result<()> {
    if v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.into()))
    }
}

/// `exp(-i H t)`.
pub fn propagator(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    expm(&(h * Complex64::new(0.0, -t)))
}

fn self_check_threshold(h: &DMatrix<Complex64>, t: f64, tolerance: f64) -> f64 {
    tolerance.max(ROUNDOFF * (1.0 + expm::one_norm(h) * t.abs()))
}

/// Checked exponential step: returns `exp(-i H t)` after verifying it
/// against the square of the half-step propagator on `psi`.
fn checked_step(
    h: &DMatrix<Complex64>,
    t: f64,
    psi: &DVector<Complex64>,
    tolerance: f64,
) -> Result<DMatrix<Complex64>> {
    let full = propagator(h, t);
    let half = propagator(h, 0.5 * t);
    let a = &full * psi;
    let b = &half * (&half * psi);
    check_finite_vector(&a, "evolved state")?;
    let scale = psi.norm().max(f64::MIN_POSITIVE);
    let estimate = (&a - &b).norm() / scale;
    let threshold = self_check_threshold(h, t, tolerance);
    if estimate > threshold {
        return Err(Error::AccuracyNotReached {
            estimate,
            tolerance: threshold,
        });
    }
    Ok(full)
}

/// Raw-matrix evolution used by both the collective model and the
/// full tensor-product oracle.
pub fn propagate(
    h: &DMatrix<Complex64>,
    psi0: &DVector<Complex64>,
    t: f64,
    tolerance: f64,
) -> Result<DVector<Complex64>> {
    if h.nrows() != psi0.len() || h.ncols() != psi0.len() {
        return Err(Error::BasisMismatch);
    }
    check_finite_matrix(h)?;
    check_finite_vector(psi0, "initial state")?;
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let u = checked_step(h, t, psi0, tolerance)?;
    Ok(u * psi0)
}

/// States at `t_k = k * t / samples` for `k = 1..=samples`.
pub fn propagate_samples(
    h: &DMatrix<Complex64>,
    psi0: &DVector<Complex64>,
    t: f64,
    samples: usize,
    tolerance: f64,
) -> Result<Vec<(f64, DVector<Complex64>)>> {
    if h.nrows() != psi0.len() || h.ncols() != psi0.len() {
        return Err(Error::BasisMismatch);
    }
    if samples == 0 {
        return Err(Error::invalid("sample_count", "must be at least 1"));
    }
    check_finite_matrix(h)?;
    check_finite_vector(psi0, "initial state")?;
    let dt = t / samples as f64;
    if dt == 0.0 {
        return Ok((1..=samples)
            .map(|k| (k as f64 * dt, psi0.clone()))
            .collect());
    }
    let u = checked_step(h, dt, psi0, tolerance)?;
    let mut psi = psi0.clone();
    let mut out = Vec::with_capacity(samples);
    for k in 1..=samples {
        psi = &u * psi;
        out.push((k as f64 * dt, psi.clone()));
    }
    Ok(out)
}

fn integrator_tolerances(tolerance: f64, psi0: &DVector<Complex64>) -> Tolerances {
    // The step controller is conservative; a factor of 100 headroom keeps the
    // global error inside `tolerance` for the stiff drive blocks.
    Tolerances::new(tolerance * 1e-2, tolerance * 1e-2 * psi0.norm().max(1e-300))
}

/// Dormand–Prince evolution of `i dpsi/dt = H psi`.
pub fn integrate_schrodinger(
    h: &DMatrix<Complex64>,
    psi0: &DVector<Complex64>,
    times: &[f64],
    tolerance: f64,
) -> Result<Vec<DVector<Complex64>>> {
    let minus_i_h = h * Complex64::new(0.0, -1.0);
    integrator::integrate_at(
        |_, y| &minus_i_h * y,
        0.0,
        times,
        psi0,
        integrator_tolerances(tolerance, psi0),
    )
}

fn check_basis(spec: &EvolutionSpec, psi0: &StateVector) -> Result<()> {
    if !spec.operator.basis().same_as(psi0.basis()) {
        return Err(Error::BasisMismatch);
    }
    spec.validate()
}

pub fn evolve(spec: &EvolutionSpec, psi0: &StateVector) -> Result<StateVector> {
    check_basis(spec, psi0)?;
    let h = spec.operator.matrix();
    let out = match spec.method {
        Method::Exponential => propagate(h, psi0.amplitudes(), spec.duration, spec.tolerance)?,
        Method::Integrator => {
            if spec.duration == 0.0 {
                psi0.amplitudes().clone()
            } else {
                integrate_schrodinger(h, psi0.amplitudes(), &[spec.duration], spec.tolerance)?
                    .pop()
                    .expect("one output")
            }
        }
    };
    check_finite_vector(&out, "evolved state")?;
    StateVector::from_amplitudes(psi0.basis(), out)
}

/// Uniformly sampled trajectory `(t_k, psi(t_k))`, `t_k = k T / sample_count`,
/// `k = 1..=sample_count`; the last entry is the endpoint.
pub fn evolve_timeseries(
    spec: &EvolutionSpec,
    psi0: &StateVector,
) -> Result<Vec<(f64, StateVector)>> {
    check_basis(spec, psi0)?;
    let h = spec.operator.matrix();
    let raw = match spec.method {
        Method::Exponential => propagate_samples(
            h,
            psi0.amplitudes(),
            spec.duration,
            spec.sample_count,
            spec.tolerance,
        )?,
        Method::Integrator => {
            let dt = spec.duration / spec.sample_count as f64;
            let times: Vec<f64> = (1..=spec.sample_count).map(|k| k as f64 * dt).collect();
            let states = integrate_schrodinger(h, psi0.amplitudes(), &times, spec.tolerance)?;
            times.into_iter().zip(states).collect()
        }
    };
    raw.into_iter()
        .map(|(t, v)| Ok((t, StateVector::from_amplitudes(psi0.basis(), v)?)))
        .collect()
}
