//! Direct distribution: Charlie sends both modes of an EPR state through the
//! correlated environment.

use nalgebra::DMatrix;

use super::{coherent_info_asymptotic, ProtocolResult};
use crate::environment::EnvironmentParams;
use crate::error::{Error, Result};
use crate::gaussian::{
    apply_symplectic, beam_splitter, make_env_cm, make_epr_cm, partial_trace, CovarianceMatrix,
    EntanglementReport,
};

// Mode labels of the four-mode pipeline state EPR(A, B) ⊕ env(E1, E2).
const A: usize = 0;
const B: usize = 1;
const E1: usize = 2;
const E2: usize = 3;

/// Output state of both modes, computed by evolving `EPR ⊗ V_E` through the
/// two beam splitters and tracing the environment.
pub fn direct_output_cm(mu: f64, env: &EnvironmentParams) -> Result<CovarianceMatrix> {
    direct_pipeline(mu, env.tau(), env.omega(), env.g(), env.gp())
}

pub(crate) fn direct_pipeline(
    mu: f64,
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
) -> Result<CovarianceMatrix> {
    let state = make_epr_cm(mu)?.direct_sum(&make_env_cm(omega, g, gp)?);
    let bs = beam_splitter(tau)?;
    let state = apply_symplectic(&state, &bs, &[A, E1])?;
    let state = apply_symplectic(&state, &bs, &[B, E2])?;
    partial_trace(&state, &[E1, E2])
}

/// Closed form `tau V(mu) + (1 - tau) V_E = [[x I, H], [H, x I]]` with
/// `x = tau mu + (1 - tau) omega` and `H = tau mu' Z + (1 - tau) G`.
pub fn direct_output_cm_closed(mu: f64, env: &EnvironmentParams) -> Result<CovarianceMatrix> {
    direct_closed(mu, env.tau(), env.omega(), env.g(), env.gp())
}

pub(crate) fn direct_closed(
    mu: f64,
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
) -> Result<CovarianceMatrix> {
    let v = make_epr_cm(mu)?.into_matrix();
    let e = make_env_cm(omega, g, gp)?.into_matrix();
    Ok(CovarianceMatrix::from_raw(v * tau + e * (1.0 - tau)))
}

/// Only mode `B` is transmitted; `A` stays with Charlie.
pub fn one_mode_output_cm(mu: f64, env: &EnvironmentParams) -> Result<CovarianceMatrix> {
    one_mode_pipeline(mu, env.tau(), env.omega())
}

pub(crate) fn one_mode_pipeline(mu: f64, tau: f64, omega: f64) -> Result<CovarianceMatrix> {
    let state = make_epr_cm(mu)?.direct_sum(&CovarianceMatrix::thermal(omega)?);
    let state = apply_symplectic(&state, &beam_splitter(tau)?, &[B, 2])?;
    partial_trace(&state, &[2])
}

/// `[[mu I, mu' sqrt(tau) Z], [mu' sqrt(tau) Z, x I]]`.
pub fn one_mode_output_cm_closed(mu: f64, env: &EnvironmentParams) -> Result<CovarianceMatrix> {
    // validates mu
    make_epr_cm(mu)?;
    let (tau, omega) = (env.tau(), env.omega());
    let c = (mu * mu - 1.0).sqrt() * tau.sqrt();
    let x = tau * mu + (1.0 - tau) * omega;
    #[rustfmt::skip]
    let data = DMatrix::from_row_slice(4, 4, &[
        mu,  0.0, c,   0.0,
        0.0, mu,  0.0, -c,
        c,   0.0, x,   0.0,
        0.0, -c,  0.0, x,
    ]);
    Ok(CovarianceMatrix::from_raw(data))
}

/// Large-`mu` PTS eigenvalue of the one-mode output, `(1 - tau) omega / (1 + tau)`.
pub fn one_mode_eps_asymptotic(env: &EnvironmentParams) -> f64 {
    let tau = env.tau();
    (1.0 - tau) * env.omega() / (1.0 + tau)
}

/// Large-`mu` PTS eigenvalue of the two-mode output,
/// `(1 - tau) sqrt((omega - g)(omega + g'))`.
pub fn direct_eps_asymptotic(env: &EnvironmentParams) -> Result<f64> {
    env.require_bona_fide()?;
    Ok((1.0 - env.tau()) * ((env.omega() - env.g()) * (env.omega() + env.gp())).sqrt())
}

/// The same quantity at `omega = omega_EB`, written as
/// `sqrt([1 + tau - (1 - tau) g][1 + tau + (1 - tau) g'])`.
pub fn direct_eps_at_eb(tau: f64, g: f64, gp: f64) -> Result<f64> {
    let env = EnvironmentParams::at_eb(tau, g, gp)?;
    env.require_bona_fide()?;
    Ok(((1.0 + tau - (1.0 - tau) * g) * (1.0 + tau + (1.0 - tau) * gp)).sqrt())
}

/// Large-`mu` symplectic spectrum `(nu_+, nu_-)` of the two-mode output,
/// `nu_± = sqrt((2 omega + g' - g ± |g + g'|)(1 - tau) tau mu)`.
pub fn direct_spectrum_asymptotic(env: &EnvironmentParams, mu: f64) -> Result<(f64, f64)> {
    env.require_bona_fide()?;
    if !(mu >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
            reason: "EPR variance must be >= 1",
        });
    }
    let (tau, omega, g, gp) = (env.tau(), env.omega(), env.g(), env.gp());
    let base = 2.0 * omega + gp - g;
    let spread = (g + gp).abs();
    let scale = (1.0 - tau) * tau * mu;
    Ok((
        ((base + spread) * scale).sqrt(),
        ((base - spread) * scale).sqrt(),
    ))
}

/// Finite-`mu` direct distribution with entanglement figures for the cut
/// `A' | B'` (coherent information `I(A' > B')`).
pub fn direct_distribution(mu: f64, env: &EnvironmentParams) -> Result<ProtocolResult> {
    let output_cm = direct_output_cm(mu, env)?;
    let report = EntanglementReport::new(&output_cm, &[B])?;
    let eps = direct_eps_asymptotic(env)?;
    Ok(ProtocolResult {
        output_cm,
        report,
        asymptotic_eps: Some(eps),
        asymptotic_coherent_info: Some(coherent_info_asymptotic(eps)?),
    })
}
