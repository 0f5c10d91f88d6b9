use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// `dω/dh` is undefined where the dispersion touches zero (`h = g`, `θ = 0`).
    #[error("dispersion derivative is singular at g = {g}, h = {h}, theta = {theta}")]
    SingularPoint { g: f64, h: f64, theta: f64 },

    #[error("quadrature did not reach tolerance: estimate {estimate:e}, error {error:e} after {intervals} subintervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("magnetization has no peak at g = {g}, h = {h}")]
    NoPeak { g: f64, h: f64 },

    #[error("no sign change of the residual on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("root finder stopped after {iterations} iterations with bracket width {width:e}")]
    RootNotConverged { iterations: usize, width: f64 },

    #[error("exact diagonalization is capped at {max} sites, got {n}")]
    DimensionCap { n: usize, max: usize },

    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
