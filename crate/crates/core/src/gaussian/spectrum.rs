use nalgebra::{Complex, DMatrix};

use super::cm::{check_modes, CovarianceMatrix};
use super::{SymplecticForm, PHYSICAL_TOL};
use crate::error::{Error, Result};

/// How far below 1 a symplectic eigenvalue of `cm` may fall and still count
/// as physical.
///
/// Rounding the entries of `V` moves its symplectic eigenvalues by up to
/// about `eps * |V|^2` (e.g. `sqrt(mu^2 - 1)` in a strongly squeezed EPR
/// state), so the fixed floor `PHYSICAL_TOL` is widened accordingly.
pub fn physical_tolerance(cm: &CovarianceMatrix) -> f64 {
    let scale = cm.as_matrix().amax();
    PHYSICAL_TOL.max(16.0 * f64::EPSILON * scale * scale)
}

/// Symplectic spectrum of `cm`, sorted descending, one value per mode.
///
/// With `V = L L^T`, the antisymmetric matrix `L^T Omega L` is similar to
/// `Omega V`, so the Hermitian matrix `i L^T Omega L` has eigenvalues
/// `+nu_k` and `-nu_k`. The two members of each pair are averaged.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<Vec<f64>> {
    let n = cm.n_modes();
    let l = cm
        .as_matrix()
        .clone()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?
        .unpack();
    let omega = SymplecticForm::new(n).matrix();
    let m = l.transpose() * omega * &l;
    let h: DMatrix<Complex<f64>> = m.map(|x| Complex::new(0.0, x));
    let mut eig: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok((0..n)
        .map(|k| 0.5 * (eig[k] - eig[2 * n - 1 - k]))
        .collect())
}

/// Applies `p -> -p` on every mode of `partition`.
pub fn partial_transpose(cm: &CovarianceMatrix, partition: &[usize]) -> Result<CovarianceMatrix> {
    let n = cm.n_modes();
    check_modes(partition, n)?;
    if partition.is_empty() || partition.len() == n {
        return Err(Error::TrivialPartition);
    }
    let mut sign = vec![1.0; 2 * n];
    for &m in partition {
        sign[2 * m + 1] = -1.0;
    }
    let v = cm.as_matrix();
    Ok(CovarianceMatrix::from_raw(DMatrix::from_fn(
        2 * n,
        2 * n,
        |r, c| sign[r] * sign[c] * v[(r, c)],
    )))
}

/// Smallest symplectic eigenvalue of the partial transpose with respect to
/// `partition`.
pub fn pts_min_eigenvalue(cm: &CovarianceMatrix, partition: &[usize]) -> Result<f64> {
    let spectrum = symplectic_eigenvalues(&partial_transpose(cm, partition)?)?;
    Ok(*spectrum.last().expect("at least one mode"))
}

/// Closed two-mode formula, `nu^2 = (Delta ± sqrt(Delta^2 - 4 det V)) / 2`
/// with `Delta = det A + det B + 2 det C`. Returns `(nu_plus, nu_minus)`.
pub fn two_mode_symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<(f64, f64)> {
    two_mode_spectrum(cm, 1.0)
}

/// As [`two_mode_symplectic_eigenvalues`] for the partial transpose,
/// i.e. with `Delta~ = det A + det B - 2 det C`.
pub fn two_mode_pts_eigenvalues(cm: &CovarianceMatrix) -> Result<(f64, f64)> {
    two_mode_spectrum(cm, -1.0)
}

fn two_mode_spectrum(cm: &CovarianceMatrix, sign: f64) -> Result<(f64, f64)> {
    if cm.n_modes() != 2 {
        return Err(Error::BadShape {
            rows: cm.as_matrix().nrows(),
            cols: cm.as_matrix().ncols(),
        });
    }
    let det = cm.determinant();
    if !(det > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let delta = cm.block(0, 0).determinant()
        + cm.block(1, 1).determinant()
        + sign * 2.0 * cm.block(0, 1).determinant();
    let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
    let plus_sq = 0.5 * (delta + disc);
    // det V = nu_+^2 nu_-^2 avoids cancellation in the small root.
    let minus_sq = det / plus_sq;
    Ok((plus_sq.sqrt(), minus_sq.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{make_env_cm, make_epr_cm};
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_and_thermal() {
        for n in 1..=4 {
            let nu = symplectic_eigenvalues(&CovarianceMatrix::vacuum(n)).unwrap();
            assert_eq!(nu.len(), n);
            for v in nu {
                assert_relative_eq!(v, 1.0, epsilon = 1e-14);
            }
        }
        let nu = symplectic_eigenvalues(&CovarianceMatrix::thermal(3.0).unwrap()).unwrap();
        assert_relative_eq!(nu[0], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn epr_is_pure() {
        for mu in [1.0, 3.0, 5.0, 1e3] {
            let nu = symplectic_eigenvalues(&make_epr_cm(mu).unwrap()).unwrap();
            assert_relative_eq!(nu[0], 1.0, epsilon = 1e-9);
            assert_relative_eq!(nu[1], 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn pts_examples() {
        let thermal_pair = make_env_cm(2.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(
            pts_min_eigenvalue(&thermal_pair, &[1]).unwrap(),
            2.0,
            epsilon = 1e-14
        );

        let v = make_epr_cm(2.0).unwrap();
        let eps = pts_min_eigenvalue(&v, &[1]).unwrap();
        assert_relative_eq!(eps, 2.0 - 3f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(eps, 0.267_949_192_431_122_7, epsilon = 1e-12);
        // either side of the cut
        assert_relative_eq!(pts_min_eigenvalue(&v, &[0]).unwrap(), eps, epsilon = 1e-12);

        let env = make_env_cm(3.0, 2.0, -2.0).unwrap();
        assert_relative_eq!(
            pts_min_eigenvalue(&env, &[1]).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn pts_partition_errors() {
        let v = make_epr_cm(2.0).unwrap();
        assert_eq!(pts_min_eigenvalue(&v, &[]), Err(Error::TrivialPartition));
        assert_eq!(
            pts_min_eigenvalue(&v, &[0, 1]),
            Err(Error::TrivialPartition)
        );
        assert!(matches!(
            pts_min_eigenvalue(&v, &[5]),
            Err(Error::ModeOutOfRange { .. })
        ));
    }

    #[test]
    fn non_positive_definite_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let cm = CovarianceMatrix::symmetric(m).unwrap();
        assert_eq!(symplectic_eigenvalues(&cm), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn closed_form_matches_generic_path() {
        let v = make_env_cm(4.0, 1.5, -2.5).unwrap();
        let (plus, minus) = two_mode_symplectic_eigenvalues(&v).unwrap();
        let nu = symplectic_eigenvalues(&v).unwrap();
        assert_relative_eq!(plus, nu[0], epsilon = 1e-12);
        assert_relative_eq!(minus, nu[1], epsilon = 1e-12);
        let (_, eps) = two_mode_pts_eigenvalues(&v).unwrap();
        assert_relative_eq!(eps, pts_min_eigenvalue(&v, &[1]).unwrap(), epsilon = 1e-12);
    }
}
