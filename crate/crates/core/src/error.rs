use std::path::PathBuf;

use crate::model::ConfigPoint;

/// Errors raised by the separation library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The metric is (numerically) singular at the given point.
    #[error("singular metric at ({:.6e}, {:.6e}): det/(tr/2)^2 = {ratio:.3e}", .point.x_l, .point.x_r)]
    Singular { point: ConfigPoint, ratio: f64 },

    /// An integrated trajectory left the valid region immediately.
    #[error("trajectory left the valid region at r = {r:.6e}, last valid point ({:.6e}, {:.6e})", .last.x_l, .last.x_r)]
    Trajectory { r: f64, last: ConfigPoint },

    /// Shooting or root finding did not converge.
    #[error("no convergence: {message} (best miss distance {best_miss:.3e})")]
    Convergence { message: String, best_miss: f64 },

    /// An ODE integration failed.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Invalid configuration (unknown key, unparsable value, ...).
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 1 for domain/config/io, 2 for
    /// convergence and numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Config(_) | Error::Io { .. } => 1,
            Error::Singular { .. }
            | Error::Trajectory { .. }
            | Error::Convergence { .. }
            | Error::Numerical(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
