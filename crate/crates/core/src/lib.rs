// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-mode optical cavity coupled to an ensemble of `N` identical V-type
//! atoms, simulated exactly in the permutation-symmetric subspace.
//!
//! A drive on the two excited levels lets the ensemble mediate a
//! beam-splitter interaction between the cavity modes with strength
//! `xi = N conj(g_a) g_b e^{-i phi} / omega`. This crate builds the
//! collective operators, evolves states under them (with optional no-jump
//! damping), and measures swap-gate fidelity and photon loss.
//!
//! Modules, bottom-up:
//!
//! * [`basis`]: collective basis and state vectors;
//! * [`params`]: physical constants and unit conventions;
//! * [`hamiltonians`]: operator builders and the drive frame transform;
//! * [`propagator`]: matrix-exponential and Runge–Kutta evolution;
//! * [`oracle`]: brute-force tensor-product reference model;
//! * [`gates`]: swap gate, truth table, conversion efficiency;
//! * [`experiments`]: sweeps and reports;
//! * [`config`] and [`run`]: the command-line front end.

pub mod basis;
pub mod config;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod hamiltonians;
pub mod oracle;
pub mod params;
pub mod propagator;
pub mod run;

pub use basis::{
    enumerate_basis, ideal_swap_target, initial_swap_state, AtomicLabel, BasisLabel,
    CollectiveBasis, StateVector,
};
pub use error::{Error, Result};
pub use gates::{run_swap_gate, Backend, GateResult};
pub use hamiltonians::{effective_coupling, OperatorMatrix};
pub use params::{SystemParams, UnitConvention};
pub use propagator::{evolve, evolve_timeseries, EvolutionSpec, Method};
