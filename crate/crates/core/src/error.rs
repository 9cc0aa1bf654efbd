use std::path::PathBuf;

use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("altitude {altitude_m} m is outside the aerial model range ({min_exclusive_m}, 300] m")]
    AltitudeOutOfRange { altitude_m: f64, min_exclusive_m: f64 },

    #[error("degenerate link geometry: UAV position coincides with base station {bs_id}")]
    DegenerateGeometry { bs_id: u32 },

    #[error("deployment has no base stations")]
    EmptyDeployment,

    #[error("cruise speed must be strictly positive, got {0} m/s")]
    NonPositiveSpeed(f64),

    #[error("infeasible mission: {0}")]
    InfeasibleMission(String),

    #[error("iteration budget of {max_iter} stages exhausted before END received a label")]
    IterationBudgetExhausted { max_iter: usize },

    #[error("grid of {cells} cells exceeds the exhaustive oracle limit of {limit}")]
    GridTooLarge { cells: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
