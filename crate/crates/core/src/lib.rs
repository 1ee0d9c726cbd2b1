//! Selmer groups of finite Galois modules over number fields, computed from
//! permutation-module resolutions, Hecke operators and S-unit data.

use thiserror::Error;

pub mod abgroup;
pub mod cocycle;
pub mod files;
pub mod format;
pub mod gmodule;
pub mod oracle;
pub mod permgrp;
pub mod pipeline;
pub mod report;
pub mod resolution;
pub mod selmer;

use gmodule::GModuleError;
use oracle::OracleError;
use permgrp::PermError;
use resolution::ResolutionError;
use selmer::SelmerError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {0}")]
    Io(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("module: {0}")]
    Module(#[from] GModuleError),
    #[error("resolution: {0}")]
    Resolution(#[from] ResolutionError),
    #[error("fixture: {0}")]
    Oracle(#[from] OracleError),
    #[error("selmer: {0}")]
    Selmer(#[from] SelmerError),
    #[error("torsion check: {0}")]
    TorsionCheck(String),
}

impl From<PermError> for Error {
    fn from(e: PermError) -> Error {
        Error::Module(GModuleError::Perm(e))
    }
}

impl Error {
    /// 2 for invalid input, 3 for algorithm failures, 4 when local data is
    /// missing, 5 when the fixture contradicts the computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Schema(_) | Error::Module(_) => 2,
            Error::Resolution(ResolutionError::Module(_)) => 2,
            Error::Resolution(_) | Error::TorsionCheck(_) => 3,
            Error::Oracle(e) => oracle_code(e),
            Error::Selmer(e) => match e {
                SelmerError::Oracle(e) => oracle_code(e),
                SelmerError::Module(_) | SelmerError::InvalidS(_) | SelmerError::UnknownCondition { .. } => 2,
                SelmerError::NeedsLocalData(_) => 4,
                SelmerError::SUnitLeak { .. } | SelmerError::NotWellDefined(_) => 5,
                SelmerError::MissingPrime(_)
                | SelmerError::PoolExhausted
                | SelmerError::DividesM(_)
                | SelmerError::RamifiedPrime(_) => 3,
            },
        }
    }
}

fn oracle_code(e: &OracleError) -> i32 {
    match e {
        OracleError::Io { .. } | OracleError::SchemaError(_) | OracleError::InvariantViolation { .. } => 2,
        OracleError::RamifiedPrime(_) | OracleError::UnknownPrime(_) | OracleError::MissingClassData(_) => 3,
    }
}
