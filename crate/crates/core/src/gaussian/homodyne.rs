use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::cm::{check_modes, CovarianceMatrix};
use crate::error::{Error, Result};

/// Singular-value cutoff of the pseudo-inverse in homodyne conditioning.
const PINV_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quadrature {
    Q,
    P,
}

impl Quadrature {
    fn offset(self) -> usize {
        match self {
            Quadrature::Q => 0,
            Quadrature::P => 1,
        }
    }
}

/// Conditional covariance matrix after homodyning `quadrature` of `mode`.
///
/// `V_A - C (Pi B Pi)^+ C^T`, where `B` is the measured mode's block, `C` the
/// cross block and `Pi` the projector on the measured quadrature. Returns
/// the state of the remaining modes in their original order. The result
/// does not depend on the measurement outcome.
pub fn homodyne_condition(
    cm: &CovarianceMatrix,
    mode: usize,
    quadrature: Quadrature,
) -> Result<CovarianceMatrix> {
    let n = cm.n_modes();
    check_modes(&[mode], n)?;
    if n == 1 {
        return Err(Error::TrivialPartition);
    }
    let v = cm.as_matrix();
    let measured = 2 * mode + quadrature.offset();
    let variance = v[(measured, measured)];
    // (Pi B Pi)^+ is diag(1/variance, 0) for a rank-one projector.
    if !(variance > PINV_CUTOFF) {
        return Err(Error::DegenerateMeasurement { variance });
    }
    let rest: Vec<usize> = (0..2 * n).filter(|&i| i / 2 != mode).collect();
    let k = rest.len();
    let data = DMatrix::from_fn(k, k, |r, c| {
        let (i, j) = (rest[r], rest[c]);
        v[(i, j)] - v[(i, measured)] * v[(j, measured)] / variance
    });
    Ok(CovarianceMatrix::from_raw(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::make_epr_cm;
    use approx::assert_relative_eq;

    #[test]
    fn product_state_unchanged() {
        let a = CovarianceMatrix::thermal(3.0).unwrap();
        let b = CovarianceMatrix::thermal(2.0).unwrap();
        let out = homodyne_condition(&a.direct_sum(&b), 1, Quadrature::Q).unwrap();
        assert_eq!(out, a);
    }

    #[test]
    fn epr_q_measurement() {
        let v = make_epr_cm(2.0).unwrap();
        let out = homodyne_condition(&v, 1, Quadrature::Q).unwrap();
        let m = out.as_matrix();
        assert_relative_eq!(m[(0, 0)], 0.5, epsilon = 1e-14);
        assert_relative_eq!(m[(1, 1)], 2.0, epsilon = 1e-14);
        assert_eq!(m[(0, 1)], 0.0);
    }

    #[test]
    fn degenerate_and_range_errors() {
        let mut m = DMatrix::identity(4, 4);
        m[(2, 2)] = 0.0;
        let cm = CovarianceMatrix::symmetric(m).unwrap();
        assert!(matches!(
            homodyne_condition(&cm, 1, Quadrature::Q),
            Err(Error::DegenerateMeasurement { .. })
        ));
        assert!(homodyne_condition(&cm, 1, Quadrature::P).is_ok());
        assert!(matches!(
            homodyne_condition(&cm, 2, Quadrature::P),
            Err(Error::ModeOutOfRange { .. })
        ));
        let single = CovarianceMatrix::vacuum(1);
        assert_eq!(
            homodyne_condition(&single, 0, Quadrature::Q),
            Err(Error::TrivialPartition)
        );
    }
}
