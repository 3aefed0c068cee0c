// SPDX-License-Identifier: Apache-2.0

//! Failures mapped to process exit codes.

use std::fmt;

use hartogs_core::cartan::CartanError;
use hartogs_core::classify::ClassifyError;
use hartogs_core::genfun::GenfunError;
use hartogs_core::geometry::GeometryError;

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        CliError { code: EXIT_DOMAIN, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INTERNAL, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CartanError> for CliError {
    fn from(e: CartanError) -> Self {
        match e {
            CartanError::DomainViolation(_) => CliError::domain(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<GenfunError> for CliError {
    fn from(e: GenfunError) -> Self {
        match e {
            GenfunError::DegreeCollapse { .. } | GenfunError::Inconsistent(_) => CliError::internal(e.to_string()),
            GenfunError::Pole => CliError::domain(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::InternalConsistency(_) => CliError::internal(e.to_string()),
            ClassifyError::NonPositiveAlpha(_) => CliError::invalid(e.to_string()),
            ClassifyError::Genfun(g) => g.into(),
            ClassifyError::Cartan(c) => c.into(),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::DomainViolation(_)
            | GeometryError::PositivityViolation(_)
            | GeometryError::NotPositiveDefinite { .. } => CliError::domain(e.to_string()),
            GeometryError::Cartan(c) => c.into(),
            GeometryError::Genfun(g) => g.into(),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}
