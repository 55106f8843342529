// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Swap-gate and frequency-conversion protocols and their figures of merit.
//!
//! Two backends evolve the same initial states:
//!
//! * [`Backend::Full`]: the complete collective operator `H_I` plus no-jump
//!   damping of atoms and cavity;
//! * [`Backend::Effective`]: the beam-splitter operator on all-ground states
//!   plus cavity damping of those states only.
//!
//! Gate time is `pi / (2 |xi|)`. For complex `xi = |xi| e^{i theta}` the ideal
//! output picks up the phases `e^{+-i theta}` on the exchanged single-photon
//! states (see [`crate::basis::ideal_swap_target_with_phase`]).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::basis::{
    enumerate_basis, ideal_swap_target_with_phase, initial_swap_state, AtomicLabel, BasisLabel,
    CollectiveBasis, StateVector, LOGICAL_STATES,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{
    build_cavity_decay_ground, build_h_eff, build_h_i, build_h_nonhermitian, effective_coupling,
    OperatorMatrix,
};
use crate::params::SystemParams;
use crate::propagator::{evolve, evolve_timeseries, EvolutionSpec, DEFAULT_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Full,
    Effective,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Full => "full",
            Backend::Effective => "effective",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Backend::Full),
            "effective" => Ok(Backend::Effective),
            other => Err(Error::Parse(format!(
                "unknown backend `{other}` (expected full or effective)"
            ))),
        }
    }
}

/// Name of the coefficient multiplying `label` in the conditional-state
/// expansion of the swap output (`alpha_*`, `beta_*`, `eta_*`, `zeta_00`,
/// `chi_00`, `xi_00`, `delta_*`).
pub fn coefficient_name(label: BasisLabel) -> Option<&'static str> {
    use AtomicLabel::*;
    let name = match (label.atomic, label.n_a, label.n_b) {
        (G, 0, 0) => "alpha_00",
        (G, 0, 1) => "alpha_01",
        (G, 1, 0) => "alpha_10",
        (G, 1, 1) => "alpha_11",
        (G, 2, 0) => "delta_20",
        (G, 0, 2) => "delta_02",
        (Phi1, 0, 0) => "beta_00",
        (Phi1, 1, 0) => "beta_10",
        (Phi1, 0, 1) => "beta_01",
        (Phi2, 0, 0) => "eta_00",
        (Phi2, 1, 0) => "eta_10",
        (Phi2, 0, 1) => "eta_01",
        (Phi3, 0, 0) => "zeta_00",
        (Phi4, 0, 0) => "chi_00",
        (Phi5, 0, 0) => "xi_00",
        _ => return None,
    };
    Some(name)
}

#[derive(Debug, Clone)]
pub struct GateResult {
    pub fidelity: f64,
    pub p_loss: f64,
    pub gate_time: f64,
    pub xi: Complex64,
    /// Unnormalized conditional amplitudes in basis order.
    pub amplitudes: Vec<(BasisLabel, Complex64)>,
    pub backend: Backend,
}

impl GateResult {
    pub fn coefficient(&self, name: &str) -> Option<Complex64> {
        self.amplitudes
            .iter()
            .find(|(l, _)| coefficient_name(*l) == Some(name))
            .map(|(_, z)| *z)
    }

    pub fn amplitude(&self, label: BasisLabel) -> Complex64 {
        self.amplitudes
            .iter()
            .find(|(l, _)| *l == label)
            .map_or(Complex64::new(0.0, 0.0), |(_, z)| *z)
    }

    pub fn named_amplitudes(&self) -> impl Iterator<Item = (&'static str, Complex64)> + '_ {
        self.amplitudes
            .iter()
            .filter_map(|(l, z)| coefficient_name(*l).map(|n| (n, *z)))
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|(_, z)| z.norm_sqr()).sum()
    }
}

/// `pi / (2 |xi|)`.
pub fn gate_time(params: &SystemParams) -> Result<f64> {
    let xi = effective_coupling(params)?;
    if xi.norm() == 0.0 {
        return Err(Error::invalid(
            "xi",
            "effective coupling vanishes; no gate time",
        ));
    }
    Ok(PI / (2.0 * xi.norm()))
}

/// Generator of the chosen backend on `basis`.
pub fn gate_operator(
    params: &SystemParams,
    basis: &Arc<CollectiveBasis>,
    backend: Backend,
    include_decay: bool,
) -> Result<OperatorMatrix> {
    params.validate()?;
    match backend {
        Backend::Full => Ok(if include_decay {
            build_h_nonhermitian(params, basis)
        } else {
            build_h_i(params, basis)
        }),
        Backend::Effective => {
            let h = build_h_eff(params, basis)?;
            if include_decay {
                h.sum(&build_cavity_decay_ground(params, basis))
            } else {
                Ok(h)
            }
        }
    }
}

fn gate_basis() -> Arc<CollectiveBasis> {
    enumerate_basis(2)
}

pub fn run_swap_gate(
    params: &SystemParams,
    backend: Backend,
    include_decay: bool,
) -> Result<GateResult> {
    run_swap_gate_with(params, backend, include_decay, DEFAULT_TOLERANCE)
}

pub fn run_swap_gate_with(
    params: &SystemParams,
    backend: Backend,
    include_decay: bool,
    tolerance: f64,
) -> Result<GateResult> {
    let xi = effective_coupling(params)?;
    let t = gate_time(params)?;
    let basis = gate_basis();
    let h = gate_operator(params, &basis, backend, include_decay)?;
    let psi0 = initial_swap_state(&basis)?;
    let out = evolve(&EvolutionSpec::new(h, t).tolerance(tolerance), &psi0)?;
    score_swap_output(&out, xi, t, backend)
}

/// Fidelity and loss of a conditional swap output.
pub fn score_swap_output(
    out: &StateVector,
    xi: Complex64,
    gate_time: f64,
    backend: Backend,
) -> Result<GateResult> {
    let norm_sq = out.norm_squared();
    if !norm_sq.is_finite() {
        return Err(Error::NonFinite("conditional state".into()));
    }
    let target = ideal_swap_target_with_phase(out.basis(), xi.arg())?;
    let normalized = out.normalized()?;
    let fidelity = target.inner(&normalized)?.norm_sqr().min(1.0);
    Ok(GateResult {
        fidelity,
        p_loss: 1.0 - norm_sq,
        gate_time,
        xi,
        amplitudes: out.iter().collect(),
        backend,
    })
}

/// Sampled swap trajectory, `samples` points ending at the gate time.
pub fn swap_trajectory(
    params: &SystemParams,
    backend: Backend,
    include_decay: bool,
    samples: usize,
) -> Result<Vec<(f64, StateVector)>> {
    let t = gate_time(params)?;
    let basis = gate_basis();
    let h = gate_operator(params, &basis, backend, include_decay)?;
    let psi0 = initial_swap_state(&basis)?;
    evolve_timeseries(&EvolutionSpec::new(h, t).samples(samples), &psi0)
}

/// Evolves each logical input `|n_a, n_b>` (atoms in `G`) for time `t`.
/// Damping is applied whenever `params` carries nonzero rates.
pub fn truth_table(
    params: &SystemParams,
    backend: Backend,
    t: f64,
) -> Result<BTreeMap<(u32, u32), StateVector>> {
    let basis = gate_basis();
    let h = gate_operator(params, &basis, backend, params.has_decay())?;
    let spec = EvolutionSpec::new(h, t);
    LOGICAL_STATES
        .iter()
        .map(|l| {
            let psi = StateVector::basis_state(&basis, *l)?;
            Ok(((l.n_a, l.n_b), evolve(&spec, &psi)?))
        })
        .collect()
}

/// Probability of `|G,0,1>` at time `t` starting from `|G,1,0>`.
pub fn conversion_efficiency(params: &SystemParams, backend: Backend, t: f64) -> Result<f64> {
    Ok(conversion_curve(params, backend, &[t])?[0])
}

/// [`conversion_efficiency`] at several times, sharing one operator.
pub fn conversion_curve(
    params: &SystemParams,
    backend: Backend,
    times: &[f64],
) -> Result<Vec<f64>> {
    let basis = enumerate_basis(1);
    let h = gate_operator(params, &basis, backend, params.has_decay())?;
    let psi = StateVector::basis_state(&basis, BasisLabel::ground(1, 0))?;
    times
        .iter()
        .map(|&t| {
            let out = evolve(&EvolutionSpec::new(h.clone(), t), &psi)?;
            Ok(out.amplitude(BasisLabel::ground(0, 1)).norm_sqr())
        })
        .collect()
}
