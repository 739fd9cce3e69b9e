//! Entanglement distribution through the correlated environment.
//!
//! Every protocol comes in two independent forms: an exact finite-squeezing
//! pipeline built from beam splitters, partial traces and homodyne
//! conditioning, and the closed-form expressions valid for large input
//! squeezing `mu`. The tests hold one against the other.

pub mod direct;
pub mod swap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, EntanglementReport};

pub use direct::{
    direct_distribution, direct_eps_asymptotic, direct_eps_at_eb, direct_output_cm,
    direct_output_cm_closed, direct_spectrum_asymptotic, one_mode_eps_asymptotic,
    one_mode_output_cm, one_mode_output_cm_closed,
};
pub use swap::{
    epr_variances, swap_coherent_info_det_form, swap_conditional_cm, swap_distribution,
    swap_epr_variances_asymptotic, swap_eps_asymptotic, swap_noiseless_cm, swap_pipeline_cm,
};

/// Squeezing used as the stand-in for the `mu -> infinity` limit.
pub const LARGE_MU: f64 = 1e6;

/// Finite-`mu` output state of a protocol with its entanglement figures and,
/// where available, the large-`mu` predictions.
#[derive(Debug, Clone)]
pub struct ProtocolResult {
    pub output_cm: CovarianceMatrix,
    pub report: EntanglementReport,
    pub asymptotic_eps: Option<f64>,
    pub asymptotic_coherent_info: Option<f64>,
}

impl ProtocolResult {
    /// `|pts_min - eps_inf| / eps_inf`, when an asymptotic value is known.
    pub fn relative_error(&self) -> Option<f64> {
        self.asymptotic_eps
            .map(|eps| (self.report.pts_min - eps).abs() / eps)
    }
}

/// Variances of the EPR quadratures `(q_a - q_b)/sqrt 2` and `(p_a + p_b)/sqrt 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EprVariances {
    pub v_qminus: f64,
    pub v_pplus: f64,
}

impl EprVariances {
    /// Both variances below the vacuum level.
    pub fn is_epr_correlated(&self) -> bool {
        self.v_qminus < 1.0 && self.v_pplus < 1.0
    }
}

/// Large-`mu` coherent information `ln(1 / (e eps)) = -1 - ln eps`, in nats.
pub fn coherent_info_asymptotic(eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            reason: "PTS eigenvalue must be positive",
        });
    }
    Ok(-1.0 - eps.ln())
}
