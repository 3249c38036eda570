use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integrator did not reach tolerance {tolerance:e} (achieved {achieved:e})")]
    Integrator { tolerance: f64, achieved: f64 },

    #[error("quadrature did not converge to {tolerance:e} (achieved {achieved:e})")]
    Quadrature { tolerance: f64, achieved: f64 },

    #[error("potential coefficients decay too slowly: tail {tail:e} exceeds {limit:e}")]
    CoefficientDecay { tail: f64, limit: f64 },

    #[error("eigenvalue {index} not converged: shift {shift:e} after doubling to {modes} modes")]
    SpectralConvergence { index: usize, shift: f64, modes: usize },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root finder did not converge after {iterations} iterations")]
    RootNotConverged { iterations: usize },

    #[error("band interlacing violated at tau = {tau}: {detail}")]
    Interlacing { tau: f64, detail: String },

    #[error("degenerate metric (EG - F^2 = {0:e})")]
    DegenerateMetric(f64),

    #[error("point at t = {t} lies outside the sampled profile range [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("bifurcation point carries no eigenfunction")]
    MissingEigenfunction,

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialize(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialize(e.to_string())
    }
}
