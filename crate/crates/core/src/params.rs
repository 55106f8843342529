// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical constants of the model and unit conventions.
//!
//! Couplings and rates are angular frequencies. Atoms couple uniformly:
//! every atom sees the same `g_a`, `g_b`, `omega` and `phi`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Atom count used throughout the reference parameter set.
pub const REFERENCE_ATOMS: u64 = 40_000;
/// Reference drive strength in units of the collective coupling `sqrt(N) g`.
pub const REFERENCE_OMEGA_RATIO: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    pub n_atoms: u64,
    pub g_a: Complex64,
    pub g_b: Complex64,
    /// Rabi frequency of the drive on `e1 <-> e2`.
    pub omega: f64,
    /// Drive phase in radians.
    pub phi: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
}

impl SystemParams {
    /// Decay-free parameters with real couplings and zero drive phase.
    pub fn new(n_atoms: u64, g_a: f64, g_b: f64, omega: f64) -> Self {
        Self {
            n_atoms,
            g_a: Complex64::new(g_a, 0.0),
            g_b: Complex64::new(g_b, 0.0),
            omega,
            phi: 0.0,
            kappa_a: 0.0,
            kappa_b: 0.0,
            gamma_1: 0.0,
            gamma_2: 0.0,
        }
    }

    /// Equal couplings `g` and drive `omega_ratio * sqrt(N) * g`.
    pub fn uniform(n_atoms: u64, g: f64, omega_ratio: f64) -> Self {
        let omega = omega_ratio * (n_atoms as f64).sqrt() * g.abs();
        Self::new(n_atoms, g, g, omega)
    }

    /// `N = 4e4`, `g_a = g_b = g`, `omega = 20 sqrt(N) g`, no decay.
    pub fn reference(g: f64) -> Self {
        Self::uniform(REFERENCE_ATOMS, g, REFERENCE_OMEGA_RATIO)
    }

    /// Sets `kappa_a = kappa_b = kappa` and `gamma_1 = gamma_2 = gamma`.
    pub fn with_decay(mut self, kappa: f64, gamma: f64) -> Self {
        self.kappa_a = kappa;
        self.kappa_b = kappa;
        self.gamma_1 = gamma;
        self.gamma_2 = gamma;
        self
    }

    pub fn without_decay(mut self) -> Self {
        self.kappa_a = 0.0;
        self.kappa_b = 0.0;
        self.gamma_1 = 0.0;
        self.gamma_2 = 0.0;
        self
    }

    pub fn has_decay(&self) -> bool {
        self.kappa_a > 0.0 || self.kappa_b > 0.0 || self.gamma_1 > 0.0 || self.gamma_2 > 0.0
    }

    /// `omega / (sqrt(N) * max(|g_a|, |g_b|))`; the adiabatic-elimination
    /// condition asks for this to be large.
    pub fn omega_ratio(&self) -> f64 {
        let g = self.g_a.norm().max(self.g_b.norm());
        self.omega / ((self.n_atoms as f64).sqrt() * g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(Error::invalid("n_atoms", "must be at least 1"));
        }
        let finite = [
            ("g_a", self.g_a.re),
            ("g_a", self.g_a.im),
            ("g_b", self.g_b.re),
            ("g_b", self.g_b.im),
            ("omega", self.omega),
            ("phi", self.phi),
        ];
        for (field, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(field, "must be finite"));
            }
        }
        let rates = [
            ("omega", self.omega),
            ("kappa_a", self.kappa_a),
            ("kappa_b", self.kappa_b),
            ("gamma_1", self.gamma_1),
            ("gamma_2", self.gamma_2),
        ];
        for (field, v) in rates {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(
                    field,
                    format!("must be finite and >= 0, got {v}"),
                ));
            }
        }
        Ok(())
    }
}

/// How frequency-like numbers in a config relate to stored angular rates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitConvention {
    /// Numbers are quoted as `x / 2pi`; stored rate is `2pi * x * unit`.
    Angular,
    /// Numbers are the rates themselves; stored rate is `x * unit`.
    Plain,
}

impl UnitConvention {
    pub fn to_rate(self, value: f64, unit_hz: f64) -> f64 {
        match self {
            UnitConvention::Angular => 2.0 * PI * value * unit_hz,
            UnitConvention::Plain => value * unit_hz,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UnitConvention::Angular => "angular",
            UnitConvention::Plain => "plain",
        }
    }
}

impl fmt::Display for UnitConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UnitConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "angular" => Ok(UnitConvention::Angular),
            "plain" => Ok(UnitConvention::Plain),
            other => Err(Error::Parse(format!(
                "unknown unit convention `{other}` (expected angular or plain)"
            ))),
        }
    }
}

/// Angular frequency of a `value` quoted in MHz per 2pi.
pub fn angular_from_mhz(value: f64) -> f64 {
    UnitConvention::Angular.to_rate(value, 1e6)
}
