// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact entanglement dynamics of two noninteracting qubits, each damped by
//! its own zero-temperature structured reservoir.
//!
//! The pipeline is: pick a [`SpectralModel`], build its analytic survival
//! amplitude ([`AmplitudeFn`]), prepare an initial [`XState`] (usually a
//! Bell-like state), and evaluate the concurrence along time with
//! [`entanglement::simulate`]. The [`volterra`] solver and
//! [`entanglement::concurrence_wootters`] are independent numerical routes
//! used to cross-check the closed forms.

pub mod dynamics;
pub mod entanglement;
pub mod qmath;
pub mod reservoir;
pub mod volterra;

pub use dynamics::{bell_like_state, BellFamily, BellLikeInit, DensityMatrix4, XState};
pub use entanglement::{ConcurrenceSample, Revival, Trajectory};
pub use qmath::{Complex, Matrix4};
pub use reservoir::{AmplitudeFn, BandGapDip, CouplingRegime, DetunedLorentzian, SpectralModel};
pub use volterra::{GridAmplitude, SolverConfig};

use thiserror::Error;

/// Union of the per-module errors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] qmath::QmathError),
    #[error(transparent)]
    Model(#[from] reservoir::ModelError),
    #[error(transparent)]
    Volterra(#[from] volterra::VolterraError),
    #[error(transparent)]
    Dynamics(#[from] dynamics::DynamicsError),
    #[error(transparent)]
    Entanglement(#[from] entanglement::EntanglementError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
