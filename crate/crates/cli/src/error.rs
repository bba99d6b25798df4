use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Library(#[from] circle_geodesics::Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Library(e) => library_exit_code(e),
            _ => 1,
        }
    }
}

/// 2 for invalid input, 3 for blow-up, 4 for a singular inertia mode, 1 otherwise.
pub fn library_exit_code(e: &circle_geodesics::Error) -> i32 {
    use circle_geodesics::Error as E;
    match e {
        E::BlowUp { .. } | E::NotMonotone { .. } | E::InversionFailed { .. } => 3,
        E::SingularMode { .. } => 4,
        E::OutsideDomain { .. } | E::InvalidArgument(_) | E::NonzeroMean { .. } => 2,
        _ => 1,
    }
}
