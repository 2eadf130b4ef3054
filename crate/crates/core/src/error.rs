use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown material `{name}` (valid: {valid})")]
    UnknownMaterial { name: String, valid: String },

    #[error("material data line {line}: {message}")]
    MaterialData { line: usize, message: String },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("target cell {target_cell} m is larger than region `{region}` (thickness {thickness} m)")]
    Refinement {
        region: String,
        target_cell: f64,
        thickness: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigen-iteration did not converge after {iterations} Lanczos steps (worst in-window residual {residual:.3e}, {unconverged} Ritz values pending)")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        unconverged: usize,
    },

    #[error("singular shifted operator at {shift_hz:.6e} Hz")]
    SingularShift { shift_hz: f64 },

    #[error("line {line}: {key}: {message}")]
    Parse {
        line: usize,
        key: String,
        message: String,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("no resonant mode in window {lo_hz:.6e}..{hi_hz:.6e} Hz")]
    NoModeInWindow { lo_hz: f64, hi_hz: f64 },

    #[error("{path}: {source}")]
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
}
