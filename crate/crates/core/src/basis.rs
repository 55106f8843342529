// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Symmetric-subspace basis of the ensemble plus two cavity modes.
//!
//! A basis element is an atomic collective label together with the photon
//! numbers of modes `a` and `b`. Elements are grouped by total excitation
//! `n_a + n_b + excitation(atomic)`; within a sector the order is fixed:
//!
//! 1. atomic labels in the order `G, Phi1, Phi2, Phi3, Phi4, Phi5`;
//! 2. for each atomic label, `n_a` descending (so `n_b` ascending).
//!
//! The order is part of the serialized interface and must not change.
//!
//! Collective states (all normalized; sums run over atoms):
//!
//! * `Phi1 = N^{-1/2} sum_n |e1_n>`, `Phi2` likewise with `e2`;
//! * `Phi3 = (N(N-1))^{-1/2} sum_{n != m} |e1_n e2_m>`;
//! * `Phi4 = (2N(N-1))^{-1/2} sum_{n != m} |e1_n e1_m>`, `Phi5` likewise
//!   with `e2`. The ordered double sum visits each pair twice, hence the
//!   extra factor of two under the root.
//!
//! Atomic labels stop at two excitations. Bases with `max_excitation > 2`
//! carry extra photon states but are only closed under the effective
//! (all-ground) dynamics.

use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomicLabel {
    G,
    Phi1,
    Phi2,
    Phi3,
    Phi4,
    Phi5,
}

impl AtomicLabel {
    pub const ALL: [AtomicLabel; 6] = [
        AtomicLabel::G,
        AtomicLabel::Phi1,
        AtomicLabel::Phi2,
        AtomicLabel::Phi3,
        AtomicLabel::Phi4,
        AtomicLabel::Phi5,
    ];

    /// Occupation of the excited levels `(n_e1, n_e2)`.
    pub const fn occupancy(self) -> (u32, u32) {
        match self {
            AtomicLabel::G => (0, 0),
            AtomicLabel::Phi1 => (1, 0),
            AtomicLabel::Phi2 => (0, 1),
            AtomicLabel::Phi3 => (1, 1),
            AtomicLabel::Phi4 => (2, 0),
            AtomicLabel::Phi5 => (0, 2),
        }
    }

    pub const fn excitation(self) -> u32 {
        let (e1, e2) = self.occupancy();
        e1 + e2
    }

    pub const fn name(self) -> &'static str {
        match self {
            AtomicLabel::G => "G",
            AtomicLabel::Phi1 => "Phi1",
            AtomicLabel::Phi2 => "Phi2",
            AtomicLabel::Phi3 => "Phi3",
            AtomicLabel::Phi4 => "Phi4",
            AtomicLabel::Phi5 => "Phi5",
        }
    }

    /// Stable small integer code, used across the C interface.
    pub const fn code(self) -> u32 {
        self as u32
    }

    pub fn from_code(code: u32) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }
}

impl fmt::Display for AtomicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AtomicLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown atomic label `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub atomic: AtomicLabel,
    pub n_a: u32,
    pub n_b: u32,
}

impl BasisLabel {
    pub const fn new(atomic: AtomicLabel, n_a: u32, n_b: u32) -> Self {
        Self { atomic, n_a, n_b }
    }

    pub const fn ground(n_a: u32, n_b: u32) -> Self {
        Self::new(AtomicLabel::G, n_a, n_b)
    }

    pub const fn excitation(self) -> u32 {
        self.n_a + self.n_b + self.atomic.excitation()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.atomic, self.n_a, self.n_b)
    }
}

#[derive(Debug, Clone)]
pub struct CollectiveBasis {
    labels: Vec<BasisLabel>,
    sectors: Vec<Range<usize>>,
    index: HashMap<BasisLabel, usize>,
    max_excitation: u32,
}

impl CollectiveBasis {
    pub fn enumerate(max_excitation: u32) -> Arc<Self> {
        let mut labels = Vec::new();
        let mut sectors = Vec::with_capacity(max_excitation as usize + 1);
        for k in 0..=max_excitation {
            let start = labels.len();
            for atomic in AtomicLabel::ALL {
                let e = atomic.excitation();
                if e > k {
                    continue;
                }
                let photons = k - e;
                for n_a in (0..=photons).rev() {
                    labels.push(BasisLabel::new(atomic, n_a, photons - n_a));
                }
            }
            sectors.push(start..labels.len());
        }
        let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Arc::new(Self {
            labels,
            sectors,
            index,
            max_excitation,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn max_excitation(&self) -> u32 {
        self.max_excitation
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        self.labels[i]
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Contiguous index range of excitation sector `k`.
    pub fn sector(&self, k: u32) -> Option<Range<usize>> {
        self.sectors.get(k as usize).cloned()
    }

    pub fn sectors(&self) -> &[Range<usize>] {
        &self.sectors
    }

    pub fn require(&self, required: u32) -> Result<()> {
        if self.max_excitation < required {
            return Err(Error::BasisTooSmall {
                required,
                actual: self.max_excitation,
            });
        }
        Ok(())
    }

    pub fn same_as(&self, other: &CollectiveBasis) -> bool {
        std::ptr::eq(self, other) || self.max_excitation == other.max_excitation
    }
}

impl PartialEq for CollectiveBasis {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

pub fn enumerate_basis(max_excitation: u32) -> Arc<CollectiveBasis> {
    CollectiveBasis::enumerate(max_excitation)
}

/// Complex amplitudes over a [`CollectiveBasis`].
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Arc<CollectiveBasis>,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn zeros(basis: &Arc<CollectiveBasis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            amplitudes: DVector::zeros(basis.len()),
        }
    }

    pub fn basis_state(basis: &Arc<CollectiveBasis>, label: BasisLabel) -> Result<Self> {
        let mut s = Self::zeros(basis);
        s.set(label, Complex64::new(1.0, 0.0))?;
        Ok(s)
    }

    pub fn from_amplitudes(
        basis: &Arc<CollectiveBasis>,
        amplitudes: DVector<Complex64>,
    ) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::BasisMismatch);
        }
        Ok(Self {
            basis: Arc::clone(basis),
            amplitudes,
        })
    }

    pub fn basis(&self) -> &Arc<CollectiveBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude on `label`; zero for labels outside the basis.
    pub fn amplitude(&self, label: BasisLabel) -> Complex64 {
        self.basis
            .index_of(&label)
            .map_or(Complex64::new(0.0, 0.0), |i| self.amplitudes[i])
    }

    pub fn set(&mut self, label: BasisLabel, value: Complex64) -> Result<()> {
        let i = self.basis.index_of(&label).ok_or(Error::BasisTooSmall {
            required: label.excitation(),
            actual: self.basis.max_excitation(),
        })?;
        self.amplitudes[i] = value;
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if !self.basis.same_as(&other.basis) {
            return Err(Error::BasisMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            amplitudes: self.amplitudes.unscale(n),
        })
    }

    pub fn scaled(&self, c: Complex64) -> StateVector {
        Self {
            basis: Arc::clone(&self.basis),
            amplitudes: self.amplitudes.map(|z| z * c),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        if !self.basis.same_as(&other.basis) {
            return Err(Error::BasisMismatch);
        }
        Ok(Self {
            basis: Arc::clone(&self.basis),
            amplitudes: &self.amplitudes + &other.amplitudes,
        })
    }

    /// Total probability carried by labels with the given atomic part.
    pub fn atomic_population(&self, atomic: AtomicLabel) -> f64 {
        self.iter()
            .filter(|(l, _)| l.atomic == atomic)
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, Complex64)> + '_ {
        self.basis
            .labels()
            .iter()
            .copied()
            .zip(self.amplitudes.iter().copied())
    }

    /// Text rows `label n_a n_b re im`, one per basis element, in basis order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (l, z) in self.iter() {
            out.push_str(&format!(
                "{} {} {} {:.17e} {:.17e}\n",
                l.atomic, l.n_a, l.n_b, z.re, z.im
            ));
        }
        out
    }

    /// Parses rows written by [`StateVector::to_text`]. Missing rows are zero;
    /// blank lines and `#` comments are skipped.
    pub fn from_text(basis: &Arc<CollectiveBasis>, text: &str) -> Result<Self> {
        let mut state = Self::zeros(basis);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            if fields.len() != 5 {
                return Err(bad("expected `label n_a n_b re im`"));
            }
            let atomic: AtomicLabel = fields[0].parse()?;
            let n_a: u32 = fields[1].parse().map_err(|_| bad("bad n_a"))?;
            let n_b: u32 = fields[2].parse().map_err(|_| bad("bad n_b"))?;
            let re: f64 = fields[3].parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = fields[4].parse().map_err(|_| bad("bad imaginary part"))?;
            state.set(BasisLabel::new(atomic, n_a, n_b), Complex64::new(re, im))?;
        }
        Ok(state)
    }
}

pub fn inner_product(x: &StateVector, y: &StateVector) -> Result<Complex64> {
    x.inner(y)
}

pub fn norm(x: &StateVector) -> f64 {
    x.norm()
}

pub fn normalize(x: &StateVector) -> Result<StateVector> {
    x.normalized()
}

/// The four two-qubit logical states `|n_a, n_b>` with atoms in `G`.
pub const LOGICAL_STATES: [BasisLabel; 4] = [
    BasisLabel::ground(0, 0),
    BasisLabel::ground(0, 1),
    BasisLabel::ground(1, 0),
    BasisLabel::ground(1, 1),
];

/// Equal superposition of the four logical states with all atoms in `G`.
pub fn initial_swap_state(basis: &Arc<CollectiveBasis>) -> Result<StateVector> {
    basis.require(2)?;
    let mut s = StateVector::zeros(basis);
    for l in LOGICAL_STATES {
        s.set(l, Complex64::new(0.5, 0.0))?;
    }
    Ok(s)
}

/// Output of a perfect swap on [`initial_swap_state`] for real positive coupling:
/// `(|00> + i|10> + i|01> - |11>) / 2`.
pub fn ideal_swap_target(basis: &Arc<CollectiveBasis>) -> Result<StateVector> {
    ideal_swap_target_with_phase(basis, 0.0)
}

/// Ideal swap output when the effective coupling carries phase `theta`:
/// `|01> -> i e^{i theta} |10>` and `|10> -> i e^{-i theta} |01>`.
pub fn ideal_swap_target_with_phase(
    basis: &Arc<CollectiveBasis>,
    theta: f64,
) -> Result<StateVector> {
    basis.require(2)?;
    let i = Complex64::i();
    let mut s = StateVector::zeros(basis);
    s.set(BasisLabel::ground(0, 0), Complex64::new(0.5, 0.0))?;
    s.set(
        BasisLabel::ground(1, 0),
        0.5 * i * Complex64::from_polar(1.0, theta),
    )?;
    s.set(
        BasisLabel::ground(0, 1),
        0.5 * i * Complex64::from_polar(1.0, -theta),
    )?;
    s.set(BasisLabel::ground(1, 1), Complex64::new(-0.5, 0.0))?;
    Ok(s)
}

/// `(|2,0> + |0,2>)/sqrt 2` with atoms in `G`: the partner of `|1,1>` in the
/// two-photon beam-splitter dynamics.
pub fn two_photon_bright_state(basis: &Arc<CollectiveBasis>) -> Result<StateVector> {
    basis.require(2)?;
    let mut s = StateVector::zeros(basis);
    s.set(BasisLabel::ground(2, 0), Complex64::new(FRAC_1_SQRT_2, 0.0))?;
    s.set(BasisLabel::ground(0, 2), Complex64::new(FRAC_1_SQRT_2, 0.0))?;
    Ok(s)
}
