// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Engineering two-qubit states with two-mode Gaussian light.
//!
//! Two remote qubits, each coupled to one mode of a broadband two-mode
//! Gaussian field, relax to a steady state fixed entirely by the field's
//! covariance matrix. The crate provides
//!
//! * [`gaussian`]: standard-form covariance matrices, physicality, symplectic
//!   spectra, negativity, linear entropies and the entropic `(s, d, g, lambda)`
//!   coordinates;
//! * [`qubit`]: two-qubit density matrices and their diagnostics;
//! * [`interface`]: the Lindblad generator, its closed-form fixed point and
//!   time evolution;
//! * [`atlas`]: extremal resource families and analytic boundary curves;
//! * [`harness`]: seeded sampling, figure data tables and the verification
//!   suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod error;
pub mod format;
pub mod gaussian;
pub mod harness;
pub mod interface;
pub mod linalg;
pub mod par;
pub mod qubit;

pub use error::{Error, Result};
pub use gaussian::{EntropicParams, StandardFormCM};
pub use par::Execution;
pub use qubit::{TwoQubitState, XState};
