// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite or otherwise malformed input values.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A parameter lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Entropic parameters produce a negative radicand in the correlation formula.
    #[error("parameters outside the physical-entangled region: {0}")]
    OutOfRegion(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    /// The covariance matrix is not reachable by the entropic parameterization.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The resource makes the steady-state normalization vanish (z <= 0).
    #[error("degenerate resource: {0}")]
    DegenerateResource(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("no physical state: {0}")]
    NoPhysicalState(String),

    #[error("integration failed at tau = {tau}: {reason}")]
    Integration { tau: f64, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the
    /// environment or an internal failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::Domain(_)
                | Error::OutOfRegion(_)
                | Error::NumericalDomain(_)
                | Error::NoSolution(_)
                | Error::DegenerateResource(_)
                | Error::InvalidState(_)
                | Error::NoPhysicalState(_)
                | Error::Config(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
