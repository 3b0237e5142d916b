// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! CLI error type and its mapping onto process exit codes.

use std::path::PathBuf;

use entdyn_core::dynamics::DynamicsError;
use entdyn_core::entanglement::EntanglementError;
use entdyn_core::qmath::QmathError;
use entdyn_core::reservoir::ModelError;
use entdyn_core::volterra::VolterraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown preset '{0}' (known: {known})", known = crate::preset::PRESET_NAMES.join(", "))]
    UnknownPreset(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid model: {0}")]
    InvalidModel(ModelError),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 0 is success; 1 I/O; 2 config or parse; 3 invalid model; 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::UnknownPreset(_) | CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::InvalidModel(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Numerical(inner) => CliError::Numerical(inner.to_string()),
            other => CliError::InvalidModel(other),
        }
    }
}

impl From<VolterraError> for CliError {
    fn from(e: VolterraError) -> Self {
        match e {
            VolterraError::InvalidConfig(msg) => CliError::Config(format!("oracle: {msg}")),
            other => CliError::Numerical(format!("oracle: {other}")),
        }
    }
}

impl From<QmathError> for CliError {
    fn from(e: QmathError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::InvalidState(msg) => CliError::Config(msg),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<EntanglementError> for CliError {
    fn from(e: EntanglementError) -> Self {
        match e {
            EntanglementError::InvalidTrajectory(msg) => CliError::Config(msg),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
