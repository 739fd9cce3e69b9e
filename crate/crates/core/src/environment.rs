//! Correlated two-mode Gaussian environment in symmetric normal form.
//!
//! The state of the ancillas `E1 E2` is `[[omega I, G], [G, omega I]]` with
//! `G = diag(g, g')`. It is a valid quantum state iff
//!
//! ```text
//! |g| < omega,   |g'| < omega,   omega^2 + g g' - 1 >= omega |g + g'|
//! ```
//!
//! and separable iff additionally `omega^2 - g g' - 1 >= omega |g - g'|`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{make_env_cm, CovarianceMatrix};

/// Which bona-fide condition failed, in order of evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BonaFideViolation {
    /// `|g| >= omega`
    GAbs,
    /// `|g'| >= omega`
    GpAbs,
    /// `omega^2 + g g' - 1 < omega |g + g'|`
    Joint,
}

impl fmt::Display for BonaFideViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BonaFideViolation::GAbs => "|g| < omega fails",
            BonaFideViolation::GpAbs => "|g'| < omega fails",
            BonaFideViolation::Joint => "omega^2 + g g' - 1 >= omega |g + g'| fails",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BonaFide {
    Valid,
    Violated(BonaFideViolation),
}

impl BonaFide {
    pub fn is_valid(self) -> bool {
        self == BonaFide::Valid
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega >= 1.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "thermal variance must be finite and >= 1",
        })
    }
}

fn check_correlations(g: f64, gp: f64) -> Result<()> {
    if !g.is_finite() {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            reason: "must be finite",
        });
    }
    if !gp.is_finite() {
        return Err(Error::InvalidParameter {
            name: "g'",
            value: gp,
            reason: "must be finite",
        });
    }
    Ok(())
}

pub fn bona_fide_check(omega: f64, g: f64, gp: f64) -> Result<BonaFide> {
    check_omega(omega)?;
    check_correlations(g, gp)?;
    let verdict = if !(g.abs() < omega) {
        BonaFide::Violated(BonaFideViolation::GAbs)
    } else if !(gp.abs() < omega) {
        BonaFide::Violated(BonaFideViolation::GpAbs)
    } else if !(omega * omega + g * gp - 1.0 >= omega * (g + gp).abs()) {
        BonaFide::Violated(BonaFideViolation::Joint)
    } else {
        BonaFide::Valid
    };
    Ok(verdict)
}

fn require_bona_fide(omega: f64, g: f64, gp: f64) -> Result<()> {
    match bona_fide_check(omega, g, gp)? {
        BonaFide::Valid => Ok(()),
        BonaFide::Violated(violation) => Err(Error::NotBonaFide {
            omega,
            g,
            gp,
            violation,
        }),
    }
}

/// Smallest PTS eigenvalue of the environment,
/// `sqrt(omega^2 - g g' - omega |g - g'|)`.
pub fn env_pts(omega: f64, g: f64, gp: f64) -> Result<f64> {
    require_bona_fide(omega, g, gp)?;
    Ok((omega * omega - g * gp - omega * (g - gp).abs()).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Separability {
    Forbidden,
    Separable,
    Entangled,
}

impl Separability {
    pub fn as_str(self) -> &'static str {
        match self {
            Separability::Forbidden => "Forbidden",
            Separability::Separable => "Separable",
            Separability::Entangled => "Entangled",
        }
    }
}

impl fmt::Display for Separability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Separability {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "Forbidden" => Ok(Separability::Forbidden),
            "Separable" => Ok(Separability::Separable),
            "Entangled" => Ok(Separability::Entangled),
            other => Err(format!("unknown environment class {other:?}")),
        }
    }
}

/// Classification of an environment; `env_pts` is absent when forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvClass {
    pub separability: Separability,
    pub env_pts: Option<f64>,
}

/// Forbidden / separable / entangled. Separability is decided on the
/// polynomial form, so points on the boundary are separable.
pub fn classify_environment(omega: f64, g: f64, gp: f64) -> Result<EnvClass> {
    if !bona_fide_check(omega, g, gp)?.is_valid() {
        return Ok(EnvClass {
            separability: Separability::Forbidden,
            env_pts: None,
        });
    }
    let separability = if omega * omega - g * gp - 1.0 >= omega * (g - gp).abs() {
        Separability::Separable
    } else {
        Separability::Entangled
    };
    Ok(EnvClass {
        separability,
        env_pts: Some(env_pts(omega, g, gp)?),
    })
}

/// Entanglement-breaking threshold of a thermal-loss channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EbThreshold {
    /// `(1 + tau) / (1 - tau)`
    pub omega: f64,
    /// `tau / (1 - tau)`
    pub mean_photons: f64,
}

pub fn eb_threshold(tau: f64) -> Result<EbThreshold> {
    check_tau(tau)?;
    Ok(EbThreshold {
        omega: (1.0 + tau) / (1.0 - tau),
        mean_photons: tau / (1.0 - tau),
    })
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "transmissivity must lie in (0, 1)",
        })
    }
}

/// Transmissivity, thermal noise and correlations of the environment.
///
/// `(g, g')` are not required to be bona fide here; use
/// [`EnvironmentParams::bona_fide`] or [`EnvironmentParams::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentParams {
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
}

impl EnvironmentParams {
    pub fn new(tau: f64, omega: f64, g: f64, gp: f64) -> Result<Self> {
        check_tau(tau)?;
        check_omega(omega)?;
        check_correlations(g, gp)?;
        Ok(Self { tau, omega, g, gp })
    }

    /// Thermal noise set to the entanglement-breaking threshold of `tau`.
    pub fn at_eb(tau: f64, g: f64, gp: f64) -> Result<Self> {
        Self::new(tau, eb_threshold(tau)?.omega, g, gp)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn gp(&self) -> f64 {
        self.gp
    }

    pub fn bona_fide(&self) -> BonaFide {
        bona_fide_check(self.omega, self.g, self.gp).expect("validated on construction")
    }

    pub fn require_bona_fide(&self) -> Result<()> {
        require_bona_fide(self.omega, self.g, self.gp)
    }

    pub fn classify(&self) -> EnvClass {
        classify_environment(self.omega, self.g, self.gp).expect("validated on construction")
    }

    pub fn cm(&self) -> Result<CovarianceMatrix> {
        make_env_cm(self.omega, self.g, self.gp)
    }

    pub fn eb_threshold(&self) -> EbThreshold {
        eb_threshold(self.tau).expect("validated on construction")
    }
}
