use std::fmt;

use dirac_coulomb_core::boundary::BoundaryError;
use dirac_coulomb_core::evolution::EvolveError;

/// Top-level command errors, mapped to process exit codes:
/// usage 1, numerical failure 2, verification failure 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Verification(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Verification(m) => write!(f, "verification failure: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<BoundaryError> for CliError {
    fn from(e: BoundaryError) -> Self {
        match e {
            BoundaryError::InvalidCharge { .. } | BoundaryError::UnsupportedSource { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<EvolveError> for CliError {
    fn from(e: EvolveError) -> Self {
        match e {
            EvolveError::InvalidGrid { .. } | EvolveError::InvalidData { .. } => {
                CliError::Usage(e.to_string())
            }
            EvolveError::DomainTooSmall { needed, r_max } => CliError::Usage(format!(
                "domain too small: support reaches r = {needed:.2} but r_max = {r_max:.2}; \
                 increase grid.r_max to at least {:.2} or shorten t_final",
                needed + 1.0
            )),
            EvolveError::CflViolation { dt, limit } => CliError::Usage(format!(
                "dt = {dt} violates the stability limit {limit:.6}; lower dt or refine the scheme"
            )),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
