use serde::Serialize;

use super::cm::{check_modes, CovarianceMatrix};
use super::spectrum::{physical_tolerance, pts_min_eigenvalue, symplectic_eigenvalues};
use super::PHYSICAL_TOL;
use crate::error::{Error, Result};

/// Below this distance from 1 a symplectic eigenvalue contributes zero entropy.
const PURE_TOL: f64 = 1e-12;

/// Entropy in nats of a thermal mode with symplectic eigenvalue `nu`:
/// `h(nu) = ((nu+1)/2) ln((nu+1)/2) - ((nu-1)/2) ln((nu-1)/2)`.
pub fn entropy_function(nu: f64) -> Result<f64> {
    if !(nu >= 1.0 - PHYSICAL_TOL) {
        return Err(Error::Unphysical { nu });
    }
    if nu <= 1.0 + PURE_TOL {
        return Ok(0.0);
    }
    let a = 0.5 * (nu + 1.0);
    let b = 0.5 * (nu - 1.0);
    Ok(a * a.ln() - b * b.ln())
}

/// Sum of `h(nu)` over the symplectic spectrum. Eigenvalues within
/// [`physical_tolerance`] below 1 count as pure.
pub fn von_neumann_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    let tol = physical_tolerance(cm);
    symplectic_eigenvalues(cm)?
        .into_iter()
        .map(|nu| {
            if nu >= 1.0 - tol {
                entropy_function(nu.max(1.0))
            } else {
                Err(Error::Unphysical { nu })
            }
        })
        .sum()
}

/// `I(A>B) = S(B) - S(AB)`, where `keep` lists the modes of `B`.
pub fn coherent_information(cm: &CovarianceMatrix, keep: &[usize]) -> Result<f64> {
    check_modes(keep, cm.n_modes())?;
    if keep.is_empty() {
        return Err(Error::TrivialPartition);
    }
    Ok(von_neumann_entropy(&cm.reduced(keep)?)? - von_neumann_entropy(cm)?)
}

/// Entanglement figures of a bipartite Gaussian state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementReport {
    /// Smallest partially-transposed symplectic eigenvalue.
    pub pts_min: f64,
    /// `max(0, -ln pts_min)`, nats.
    pub log_negativity: f64,
    /// `I(A>B)` with `B` the modes given to [`EntanglementReport::new`], nats.
    pub coherent_info: f64,
    pub symplectic_spectrum: Vec<f64>,
}

impl EntanglementReport {
    /// `b_modes` is side `B` of the cut; everything else is side `A`.
    pub fn new(cm: &CovarianceMatrix, b_modes: &[usize]) -> Result<Self> {
        let pts_min = pts_min_eigenvalue(cm, b_modes)?;
        let symplectic_spectrum = symplectic_eigenvalues(cm)?;
        let coherent_info = coherent_information(cm, b_modes)?;
        Ok(Self {
            pts_min,
            log_negativity: log_negativity(pts_min),
            coherent_info,
            symplectic_spectrum,
        })
    }

    pub fn is_entangled(&self) -> bool {
        self.pts_min < 1.0
    }
}

pub(crate) fn log_negativity(pts_min: f64) -> f64 {
    if pts_min >= 1.0 {
        0.0
    } else {
        -pts_min.ln()
    }
}
