use std::process::ExitCode;

use hnstrat::hnengine::HnError;
use hnstrat::kottwitz::KottwitzError;
use hnstrat::rootdata::RootDataError;
use hnstrat::strata::StrataError;

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    /// Malformed or missing input.
    #[error("{0}")]
    Usage(String),
    /// Well-formed input violating a mathematical precondition.
    #[error("{0}")]
    Domain(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Domain(_) => ExitCode::from(3),
            CliError::OracleMismatch(_) | CliError::Internal(_) => ExitCode::from(1),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_from!(StrataError, KottwitzError, HnError, RootDataError);
