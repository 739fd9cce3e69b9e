//! Entanglement swapping: Alice and Bob each send one mode of an EPR state to
//! Charlie through the correlated environment; Charlie performs a CV Bell
//! measurement (balanced beam splitter, `q` homodyne on the "-" port and `p`
//! homodyne on the "+" port). The conditional state of the retained modes
//! `a`, `b` does not depend on the outcome, so no outcome is sampled and
//! displacements are not tracked.

use nalgebra::DMatrix;

use super::{coherent_info_asymptotic, EprVariances, ProtocolResult};
use crate::environment::EnvironmentParams;
use crate::error::{Error, Result};
use crate::gaussian::{
    apply_symplectic, beam_splitter, homodyne_condition, make_env_cm, make_epr_cm, partial_trace,
    CovarianceMatrix, EntanglementReport, Quadrature,
};

// Six-mode pipeline state EPR(a, A) ⊕ EPR(B, b) ⊕ env(E1, E2); a = 0, b = 3.
const BIG_A: usize = 1;
const BIG_B: usize = 2;
const E1: usize = 4;
const E2: usize = 5;

fn check_mu(mu: f64) -> Result<()> {
    if mu >= 1.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
            reason: "EPR variance must be finite and >= 1",
        })
    }
}

/// Noiseless swapping,
/// `(1 / 2 mu) [[(mu^2 + 1) I, (mu^2 - 1) Z], [(mu^2 - 1) Z, (mu^2 + 1) I]]`.
pub fn swap_noiseless_cm(mu: f64) -> Result<CovarianceMatrix> {
    check_mu(mu)?;
    let d = (mu * mu + 1.0) / (2.0 * mu);
    let c = (mu * mu - 1.0) / (2.0 * mu);
    #[rustfmt::skip]
    let data = DMatrix::from_row_slice(4, 4, &[
        d,   0.0, c,   0.0,
        0.0, d,   0.0, -c,
        c,   0.0, d,   0.0,
        0.0, -c,  0.0, d,
    ]);
    Ok(CovarianceMatrix::from_raw(data))
}

/// Closed-form conditional state of `(a, b)`:
/// `mu I - ((mu^2 - 1) tau / 2) K`, where `K` couples `q_a, q_b` through
/// `1/theta_q` (anti-correlated off-diagonal) and `p_a, p_b` through
/// `1/theta_p`, with
/// `theta_q = tau mu + (1 - tau)(omega - g)` and
/// `theta_p = tau mu + (1 - tau)(omega + g')`.
pub fn swap_conditional_cm(mu: f64, env: &EnvironmentParams) -> Result<CovarianceMatrix> {
    env.require_bona_fide()?;
    swap_closed(mu, env.tau(), env.omega(), env.g(), env.gp())
}

pub(crate) fn swap_closed(
    mu: f64,
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
) -> Result<CovarianceMatrix> {
    check_mu(mu)?;
    let theta_q = tau * mu + (1.0 - tau) * (omega - g);
    let theta_p = tau * mu + (1.0 - tau) * (omega + gp);
    let k = (mu * mu - 1.0) * tau / 2.0;
    let (a, b) = (k / theta_q, k / theta_p);
    #[rustfmt::skip]
    let data = DMatrix::from_row_slice(4, 4, &[
        mu - a, 0.0,    a,      0.0,
        0.0,    mu - b, 0.0,    -b,
        a,      0.0,    mu - a, 0.0,
        0.0,    -b,     0.0,    mu - b,
    ]);
    Ok(CovarianceMatrix::from_raw(data))
}

/// Conditional state of `(a, b)` from the six-mode symplectic pipeline.
pub fn swap_pipeline_cm(mu: f64, env: &EnvironmentParams) -> Result<CovarianceMatrix> {
    swap_pipeline(
        mu,
        env.tau(),
        env.omega(),
        env.g(),
        env.gp(),
        BellOrder::QFirst,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BellOrder {
    QFirst,
    /// Only used to check that the two homodyne detections commute.
    #[cfg_attr(not(test), allow(dead_code))]
    PFirst,
}

pub(crate) fn swap_pipeline(
    mu: f64,
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
    order: BellOrder,
) -> Result<CovarianceMatrix> {
    let epr = make_epr_cm(mu)?;
    let state = epr.direct_sum(&epr).direct_sum(&make_env_cm(omega, g, gp)?);
    let channel = beam_splitter(tau)?;
    let state = apply_symplectic(&state, &channel, &[BIG_A, E1])?;
    let state = apply_symplectic(&state, &channel, &[BIG_B, E2])?;
    let state = partial_trace(&state, &[E1, E2])?;
    // Bell splitter: mode 1 -> (A' + B')/sqrt2 ("+"), mode 2 -> (B' - A')/sqrt2 ("-")
    let state = apply_symplectic(&state, &beam_splitter(0.5)?, &[BIG_A, BIG_B])?;
    let (plus, minus) = (BIG_A, BIG_B);
    let conditioned = match order {
        BellOrder::QFirst => {
            let s = homodyne_condition(&state, minus, Quadrature::Q)?;
            homodyne_condition(&s, plus, Quadrature::P)?
        }
        BellOrder::PFirst => {
            let s = homodyne_condition(&state, plus, Quadrature::P)?;
            // "-" moved down one slot after removing "+"
            homodyne_condition(&s, minus - 1, Quadrature::Q)?
        }
    };
    debug_assert_eq!(conditioned.n_modes(), 2);
    Ok(conditioned)
}

/// Large-`mu` PTS eigenvalue of the swapped state,
/// `((1 - tau) / tau) sqrt((omega - g)(omega + g'))`.
pub fn swap_eps_asymptotic(env: &EnvironmentParams) -> Result<f64> {
    env.require_bona_fide()?;
    let tau = env.tau();
    Ok((1.0 - tau) / tau * ((env.omega() - env.g()) * (env.omega() + env.gp())).sqrt())
}

/// Large-`mu` EPR variances `((1 - tau) / tau) diag(omega - g, omega + g')`.
pub fn swap_epr_variances_asymptotic(env: &EnvironmentParams) -> Result<EprVariances> {
    env.require_bona_fide()?;
    let f = (1.0 - env.tau()) / env.tau();
    Ok(EprVariances {
        v_qminus: f * (env.omega() - env.g()),
        v_pplus: f * (env.omega() + env.gp()),
    })
}

/// Variances of `(q_1 - q_2)/sqrt2` and `(p_1 + p_2)/sqrt2` read off a
/// two-mode covariance matrix.
pub fn epr_variances(cm: &CovarianceMatrix) -> Result<EprVariances> {
    if cm.n_modes() != 2 {
        return Err(Error::BadShape {
            rows: cm.as_matrix().nrows(),
            cols: cm.as_matrix().ncols(),
        });
    }
    let v = cm.as_matrix();
    Ok(EprVariances {
        v_qminus: 0.5 * (v[(0, 0)] + v[(2, 2)] - 2.0 * v[(0, 2)]),
        v_pplus: 0.5 * (v[(1, 1)] + v[(3, 3)] + 2.0 * v[(1, 3)]),
    })
}

/// `ln((2/e) sqrt(det V_b / det V_ab))`, the large-`mu` determinant form of
/// the coherent information `I(a > b)` of a two-mode state.
pub fn swap_coherent_info_det_form(cm: &CovarianceMatrix) -> Result<f64> {
    let det_b = cm.reduced(&[1])?.determinant();
    let det_ab = cm.determinant();
    if !(det_b > 0.0 && det_ab > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok((2.0 / std::f64::consts::E * (det_b / det_ab).sqrt()).ln())
}

/// Finite-`mu` swapping: the conditional state comes from the six-mode
/// pipeline, its report is for the cut `a | b` with `I(a > b)`.
pub fn swap_distribution(mu: f64, env: &EnvironmentParams) -> Result<ProtocolResult> {
    env.require_bona_fide()?;
    let output_cm = swap_pipeline_cm(mu, env)?;
    let report = EntanglementReport::new(&output_cm, &[1])?;
    let eps = swap_eps_asymptotic(env)?;
    Ok(ProtocolResult {
        output_cm,
        report,
        asymptotic_eps: Some(eps),
        asymptotic_coherent_info: Some(coherent_info_asymptotic(eps)?),
    })
}
