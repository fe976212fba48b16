use thiserror::Error;
use crate::medium::Side;


#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid medium parameters: {0}")]
    InvalidMedium(String),

    #[error("frequency {frequency} lies within 1e-6 of resonance {resonance}")]
    ResonancePole { frequency: f64, resonance: f64 },

    #[error("root finder did not converge at omega = {omega} on side {side:?}: {reason}")]
    NonConvergence { omega: f64, side: Side, reason: String },

    #[error("mode labelling failed at omega = {omega} on side {side:?}: {reason}")]
    Labeling { omega: f64, side: Side, reason: String },

    #[error("omega = {omega} is within tolerance of critical frequency {edge}")]
    Boundary { omega: f64, edge: f64 },

    #[error("no subluminal interval on side {0:?}")]
    NoSubluminalInterval(Side),

    #[error("mode counting failed at omega = {omega}: {n_in} in vs {n_out} out")]
    Unbalanced { omega: f64, n_in: usize, n_out: usize },

    #[error("matching system ill-conditioned at omega = {omega} (cond = {cond:e})")]
    IllConditioned { omega: f64, cond: f64 },

    #[error("pseudo-unitarity residual {residual:e} at omega = {omega}")]
    Consistency { omega: f64, residual: f64 },

    #[error("covariance violates the uncertainty relation (min eigenvalue {0:e})")]
    Uncertainty(f64),

    #[error("degree of entanglement {0} exceeds unity")]
    Calibration(f64),

    #[error("Fock truncation at {cutoff} photons leaves tail mass {tail:e}")]
    Truncation { cutoff: usize, tail: f64 },

    #[error("configuration: {0}")]
    Config(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
