use thiserror::Error;

use crate::environment::BonaFideViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("environment (omega={omega}, g={g}, g'={gp}) is not a bona-fide state: {violation}")]
    NotBonaFide {
        omega: f64,
        g: f64,
        gp: f64,
        violation: BonaFideViolation,
    },

    #[error(
        "matrix of shape {rows}x{cols} is not a covariance matrix (need square, even dimension)"
    )]
    BadShape { rows: usize, cols: usize },

    #[error("covariance matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("covariance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("unphysical state: symplectic eigenvalue {nu} < 1")]
    Unphysical { nu: f64 },

    #[error("mode index {index} out of range for a {n_modes}-mode state")]
    ModeOutOfRange { index: usize, n_modes: usize },

    #[error("bipartition must leave at least one mode on each side")]
    TrivialPartition,

    #[error("degenerate measurement: measured quadrature variance {variance:e} is zero")]
    DegenerateMeasurement { variance: f64 },

    #[error("invalid scan specification: {0}")]
    InvalidScan(String),
}
