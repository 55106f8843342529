// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps and derived reports built on [`crate::gates`].
//!
//! Grid points are independent and run in parallel on the current rayon
//! pool; results are collected in grid order.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::{self, gate_operator, Backend};
use crate::hamiltonians::effective_coupling;
use crate::params::{SystemParams, UnitConvention};
use crate::propagator::{evolve, EvolutionSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParameter {
    /// `g / kappa` with `kappa = gamma_s`.
    GOverKappa,
    /// `omega / (sqrt(N) g)`.
    OmegaRatio,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::GOverKappa => "g_over_kappa",
            SweepParameter::OmegaRatio => "omega_ratio",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub grid: Vec<f64>,
    /// Supplies `N`, the couplings, the drive phase and the ratio
    /// `omega / (sqrt(N) g)`; rates are overwritten per grid point.
    pub template: SystemParams,
    pub backend: Backend,
}

impl SweepSpec {
    /// `g/kappa` sweep at the reference parameters with the full model.
    pub fn g_over_kappa(grid: Vec<f64>) -> Self {
        Self {
            parameter: SweepParameter::GOverKappa,
            grid,
            template: SystemParams::reference(1.0),
            backend: Backend::Full,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::invalid("grid", "must not be empty"));
        }
        if self.grid.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::invalid("grid", "values must be finite and > 0"));
        }
        if self.grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("grid", "must be strictly increasing"));
        }
        self.template.validate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub g_over_kappa: f64,
    pub fidelity: f64,
    pub p_loss: f64,
    pub gate_time: f64,
}

fn coupling_scale(p: &SystemParams) -> f64 {
    p.g_a.norm().max(p.g_b.norm())
}

/// Parameters at one `g/kappa` point: `kappa_a = kappa_b = gamma_1 = gamma_2
/// = g / x`, drive re-derived from the template's `omega / (sqrt(N) g)`.
pub fn g_over_kappa_point(template: &SystemParams, x: f64) -> SystemParams {
    let g = coupling_scale(template);
    let ratio = template.omega_ratio();
    let mut p = *template;
    p.omega = ratio * (p.n_atoms as f64).sqrt() * g;
    p.with_decay(g / x, g / x)
}

pub fn sweep_g_over_kappa(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    if spec.parameter != SweepParameter::GOverKappa {
        return Err(Error::invalid("parameter", "expected a g_over_kappa sweep"));
    }
    spec.grid
        .par_iter()
        .enumerate()
        .map(|(index, &x)| {
            let p = g_over_kappa_point(&spec.template, x);
            gates::run_swap_gate(&p, spec.backend, true)
                .map(|r| SweepRow {
                    g_over_kappa: x,
                    fidelity: r.fidelity,
                    p_loss: r.p_loss,
                    gate_time: r.gate_time,
                })
                .map_err(|e| Error::SweepPoint {
                    index,
                    parameter: spec.parameter.name(),
                    value: x,
                    source: Box::new(e),
                })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RwaRow {
    pub omega_ratio: f64,
    pub infidelity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RwaReport {
    pub rows: Vec<RwaRow>,
    /// Least-squares slope of `ln(infidelity)` against `ln(ratio)`.
    pub slope: f64,
}

/// Decay-free full-model swap infidelity against `omega / (sqrt(N) g)`,
/// at the reference atom number.
pub fn rwa_convergence(multipliers: &[f64]) -> Result<RwaReport> {
    rwa_convergence_with(&SystemParams::reference(1.0), multipliers)
}

pub fn rwa_convergence_with(template: &SystemParams, multipliers: &[f64]) -> Result<RwaReport> {
    if multipliers.is_empty() {
        return Err(Error::invalid("multipliers", "must not be empty"));
    }
    let g = coupling_scale(template);
    let rows = multipliers
        .par_iter()
        .enumerate()
        .map(|(index, &m)| {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::invalid(
                    "multipliers",
                    "values must be finite and > 0",
                ));
            }
            let mut p = template.without_decay();
            p.omega = m * (p.n_atoms as f64).sqrt() * g;
            let r =
                gates::run_swap_gate(&p, Backend::Full, false).map_err(|e| Error::SweepPoint {
                    index,
                    parameter: SweepParameter::OmegaRatio.name(),
                    value: m,
                    source: Box::new(e),
                })?;
            Ok(RwaRow {
                omega_ratio: m,
                infidelity: 1.0 - r.fidelity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let slope = loglog_slope(&rows);
    Ok(RwaReport { rows, slope })
}

fn loglog_slope(rows: &[RwaRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.infidelity > 0.0)
        .map(|r| (r.omega_ratio.ln(), r.infidelity.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Experimental inputs, quoted in `frequency_unit_hz` under `convention`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalInputs {
    pub g: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub n_atoms: u64,
    pub omega_ratio: f64,
    pub frequency_unit_hz: f64,
    pub convention: UnitConvention,
}

impl PhysicalInputs {
    /// `(g, kappa, gamma_s)/2pi = (16, 1.4, 3) MHz`, `N = 4e4`,
    /// `omega = 20 sqrt(N) g`.
    pub fn reference() -> Self {
        Self {
            g: 16.0,
            kappa: 1.4,
            gamma: 3.0,
            n_atoms: crate::params::REFERENCE_ATOMS,
            omega_ratio: crate::params::REFERENCE_OMEGA_RATIO,
            frequency_unit_hz: 1e6,
            convention: UnitConvention::Angular,
        }
    }

    pub fn to_params(&self) -> Result<SystemParams> {
        let fields = [
            ("g", self.g),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("omega_ratio", self.omega_ratio),
            ("frequency_unit_hz", self.frequency_unit_hz),
        ];
        for (field, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    field,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        if self.n_atoms == 0 {
            return Err(Error::invalid("n_atoms", "must be at least 1"));
        }
        let rate = |v| self.convention.to_rate(v, self.frequency_unit_hz);
        Ok(
            SystemParams::uniform(self.n_atoms, rate(self.g), self.omega_ratio)
                .with_decay(rate(self.kappa), rate(self.gamma)),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitsReport {
    /// Effective coupling in rad/s.
    pub xi: f64,
    pub xi_over_g: f64,
    /// Seconds.
    pub gate_time: f64,
    /// `1 / kappa` in seconds.
    pub photon_lifetime: f64,
    /// `gate_time / photon_lifetime`.
    pub ratio: f64,
}

pub fn physical_units_report(inputs: &PhysicalInputs) -> Result<UnitsReport> {
    let p = inputs.to_params()?;
    let xi = effective_coupling(&p)?.norm();
    let gate_time = PI / (2.0 * xi);
    let photon_lifetime = 1.0 / p.kappa_a;
    Ok(UnitsReport {
        xi,
        xi_over_g: xi / p.g_a.norm(),
        gate_time,
        photon_lifetime,
        ratio: gate_time / photon_lifetime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingRow {
    pub n_atoms: u64,
    /// `|xi|` with the drive held at `fixed_omega`: grows as `N`.
    pub xi_fixed_drive: f64,
    /// `|xi|` with `omega = omega_ratio sqrt(N) g`: grows as `sqrt(N)`.
    pub xi_scaled_drive: f64,
}

pub fn coupling_scaling_report(
    g: f64,
    fixed_omega: f64,
    omega_ratio: f64,
    atom_counts: &[u64],
) -> Result<Vec<ScalingRow>> {
    atom_counts
        .iter()
        .map(|&n| {
            let fixed = SystemParams::new(n, g, g, fixed_omega);
            let scaled = SystemParams::uniform(n, g, omega_ratio);
            Ok(ScalingRow {
                n_atoms: n,
                xi_fixed_drive: effective_coupling(&fixed)?.norm(),
                xi_scaled_drive: effective_coupling(&scaled)?.norm(),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymmetryRow {
    pub gb_over_ga: f64,
    /// `1 - |<psi_eff|psi_full>|^2` for the swap input, decay-free.
    pub model_infidelity: f64,
}

/// Measures how well the effective model tracks the full one when the two
/// cavity couplings differ. The drive is held at the template's ratio to
/// the larger coupling.
pub fn coupling_asymmetry_scan(
    template: &SystemParams,
    gb_over_ga: &[f64],
) -> Result<Vec<AsymmetryRow>> {
    let basis = crate::basis::enumerate_basis(2);
    let psi0 = crate::basis::initial_swap_state(&basis)?;
    let ratio = template.omega_ratio();
    gb_over_ga
        .iter()
        .map(|&r| {
            let mut p = template.without_decay();
            p.g_b = p.g_a * r;
            p.omega = ratio * (p.n_atoms as f64).sqrt() * coupling_scale(&p);
            let t = gates::gate_time(&p)?;
            let run = |backend| -> Result<_> {
                let h = gate_operator(&p, &basis, backend, false)?;
                evolve(&EvolutionSpec::new(h, t), &psi0)?.normalized()
            };
            let full = run(Backend::Full)?;
            let eff = run(Backend::Effective)?;
            let overlap: Complex64 = eff.inner(&full)?;
            Ok(AsymmetryRow {
                gb_over_ga: r,
                model_infidelity: 1.0 - overlap.norm_sqr(),
            })
        })
        .collect()
}
