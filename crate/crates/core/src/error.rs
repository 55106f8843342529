// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state vectors or operators live on different bases")]
    BasisMismatch,

    #[error("basis with max_excitation {actual} is too small; need at least {required}")]
    BasisTooSmall { required: u32, actual: u32 },

    #[error("cannot normalize a zero-norm state")]
    ZeroNorm,

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("evolution self-check error {estimate:e} exceeds tolerance {tolerance:e}")]
    AccuracyNotReached { estimate: f64, tolerance: f64 },

    #[error("full-space dimension {dim} exceeds the limit of {limit} states")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error(
        "atom count mismatch: collective model has N = {collective}, full basis has n = {full}"
    )]
    AtomCountMismatch { collective: u64, full: usize },

    #[error("photon number {photons} exceeds full-basis cutoff {cutoff}")]
    PhotonCutoff { photons: u32, cutoff: u32 },

    #[error("sweep point {index} ({parameter} = {value}) failed: {source}")]
    SweepPoint {
        index: usize,
        parameter: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
