use nalgebra::{DMatrix, Matrix2};

use super::{SYMMETRY_TOL, SYMPLECTIC_TOL};
use crate::environment::{bona_fide_check, BonaFide};
use crate::error::{Error, Result};

/// Covariance matrix of an `n`-mode zero-mean Gaussian state.
///
/// Stored as a real symmetric `2n x 2n` matrix in mode-major ordering
/// `(q1, p1, q2, p2, ...)`, vacuum variance 1. Construction through
/// [`CovarianceMatrix::new`] checks shape, symmetry and positive
/// definiteness; physicality (`V + i Omega >= 0`) is a separate question
/// answered by [`CovarianceMatrix::is_physical`].
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    data: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        let cm = Self::symmetric(data)?;
        if cm.data.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(cm)
    }

    /// Shape and symmetry check only. Used for matrices that are positive
    /// definite analytically but may not be numerically (EPR states at very
    /// large squeezing).
    pub(crate) fn symmetric(mut data: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::BadShape { rows, cols });
        }
        let scale = data.amax().max(1.0);
        let deviation = (&data - data.transpose()).amax();
        if deviation > SYMMETRY_TOL * scale || !deviation.is_finite() {
            return Err(Error::NotSymmetric { deviation });
        }
        data = (&data + data.transpose()) * 0.5;
        Ok(Self { data })
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    /// Single-mode thermal state `omega I`.
    pub fn thermal(omega: f64) -> Result<Self> {
        if !(omega >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega,
                reason: "thermal variance must be >= 1",
            });
        }
        Ok(Self {
            data: DMatrix::identity(2, 2) * omega,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[(row, col)]
    }

    /// The 2x2 block coupling modes `i` and `j`.
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        self.data.fixed_view::<2, 2>(2 * i, 2 * j).into_owned()
    }

    pub fn determinant(&self) -> f64 {
        self.data.clone().lu().determinant()
    }

    /// `self ⊕ other`, with the modes of `other` appended after those of `self`.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        let n = self.data.nrows();
        let m = other.data.nrows();
        let mut data = DMatrix::zeros(n + m, n + m);
        data.view_mut((0, 0), (n, n)).copy_from(&self.data);
        data.view_mut((n, n), (m, m)).copy_from(&other.data);
        CovarianceMatrix { data }
    }

    /// Reduced state on `keep`, in the order given.
    pub fn reduced(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        let n = self.n_modes();
        check_modes(keep, n)?;
        let idx: Vec<usize> = keep.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let data = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.data[(idx[r], idx[c])]);
        Ok(CovarianceMatrix { data })
    }

    /// True when every symplectic eigenvalue is at least 1, up to
    /// [`physical_tolerance`](super::physical_tolerance).
    pub fn is_physical(&self) -> Result<bool> {
        let tol = super::physical_tolerance(self);
        let spectrum = super::symplectic_eigenvalues(self)?;
        Ok(spectrum.iter().all(|&nu| nu >= 1.0 - tol))
    }

    pub(crate) fn from_raw(data: DMatrix<f64>) -> Self {
        let data = (&data + data.transpose()) * 0.5;
        CovarianceMatrix { data }
    }
}

pub(crate) fn check_modes(modes: &[usize], n_modes: usize) -> Result<()> {
    for (k, &m) in modes.iter().enumerate() {
        if m >= n_modes {
            return Err(Error::ModeOutOfRange { index: m, n_modes });
        }
        if modes[..k].contains(&m) {
            return Err(Error::InvalidParameter {
                name: "mode",
                value: m as f64,
                reason: "mode listed twice",
            });
        }
    }
    Ok(())
}

/// The symplectic form `Omega = ⊕ [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let d = 2 * self.n_modes;
        let mut omega = DMatrix::zeros(d, d);
        for k in 0..self.n_modes {
            omega[(2 * k, 2 * k + 1)] = 1.0;
            omega[(2 * k + 1, 2 * k)] = -1.0;
        }
        omega
    }
}

/// Real linear phase-space map preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    matrix: DMatrix<f64>,
}

impl SymplecticTransform {
    /// Fails unless `S Omega S^T = Omega` to 1e-10 absolute.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::BadShape { rows, cols });
        }
        let omega = SymplecticForm::new(rows / 2).matrix();
        let defect = (&matrix * &omega * matrix.transpose() - &omega).amax();
        if !(defect <= SYMPLECTIC_TOL) {
            return Err(Error::InvalidParameter {
                name: "symplectic defect",
                value: defect,
                reason: "S Omega S^T differs from Omega",
            });
        }
        Ok(Self { matrix })
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Embeds this transform on `modes` of an `n_modes` system, acting as
    /// the identity elsewhere.
    pub fn embed(&self, modes: &[usize], n_modes: usize) -> Result<SymplecticTransform> {
        if modes.len() != self.n_modes() {
            return Err(Error::InvalidParameter {
                name: "modes",
                value: modes.len() as f64,
                reason: "mode list length does not match the transform",
            });
        }
        check_modes(modes, n_modes)?;
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let mut full = DMatrix::identity(2 * n_modes, 2 * n_modes);
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                full[(i, j)] = self.matrix[(r, c)];
            }
        }
        Ok(SymplecticTransform { matrix: full })
    }
}

/// Two-mode squeezed vacuum `[[mu I, mu' Z], [mu' Z, mu I]]`,
/// `mu' = sqrt(mu^2 - 1)`, `Z = diag(1, -1)`.
pub fn make_epr_cm(mu: f64) -> Result<CovarianceMatrix> {
    if !(mu >= 1.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
            reason: "EPR variance must be >= 1",
        });
    }
    let mp = (mu * mu - 1.0).sqrt();
    #[rustfmt::skip]
    let data = DMatrix::from_row_slice(4, 4, &[
        mu,  0.0, mp,  0.0,
        0.0, mu,  0.0, -mp,
        mp,  0.0, mu,  0.0,
        0.0, -mp, 0.0, mu,
    ]);
    Ok(CovarianceMatrix { data })
}

/// Environment in symmetric normal form `[[omega I, G], [G, omega I]]`,
/// `G = diag(g, g')`.
pub fn make_env_cm(omega: f64, g: f64, gp: f64) -> Result<CovarianceMatrix> {
    if let BonaFide::Violated(violation) = bona_fide_check(omega, g, gp)? {
        return Err(Error::NotBonaFide {
            omega,
            g,
            gp,
            violation,
        });
    }
    #[rustfmt::skip]
    let data = DMatrix::from_row_slice(4, 4, &[
        omega, 0.0,   g,     0.0,
        0.0,   omega, 0.0,   gp,
        g,     0.0,   omega, 0.0,
        0.0,   gp,    0.0,   omega,
    ]);
    Ok(CovarianceMatrix { data })
}

/// Beam splitter of transmissivity `tau` on (signal, ancilla):
/// `[[sqrt(tau) I, sqrt(1-tau) I], [-sqrt(1-tau) I, sqrt(tau) I]]`.
pub fn beam_splitter(tau: f64) -> Result<SymplecticTransform> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "transmissivity must lie in (0, 1]",
        });
    }
    let t = tau.sqrt();
    let r = (1.0 - tau).sqrt();
    #[rustfmt::skip]
    let matrix = DMatrix::from_row_slice(4, 4, &[
        t,   0.0, r,   0.0,
        0.0, t,   0.0, r,
        -r,  0.0, t,   0.0,
        0.0, -r,  0.0, t,
    ]);
    Ok(SymplecticTransform { matrix })
}

/// `V -> S V S^T` with `S` acting on `modes`.
pub fn apply_symplectic(
    cm: &CovarianceMatrix,
    s: &SymplecticTransform,
    modes: &[usize],
) -> Result<CovarianceMatrix> {
    let full = s.embed(modes, cm.n_modes())?;
    let m = full.matrix();
    Ok(CovarianceMatrix::from_raw(m * &cm.data * m.transpose()))
}

/// Traces out the modes in `drop`; the remaining modes keep their order.
pub fn partial_trace(cm: &CovarianceMatrix, drop: &[usize]) -> Result<CovarianceMatrix> {
    check_modes(drop, cm.n_modes())?;
    let keep: Vec<usize> = (0..cm.n_modes()).filter(|m| !drop.contains(m)).collect();
    if keep.is_empty() {
        return Err(Error::TrivialPartition);
    }
    cm.reduced(&keep)
}
