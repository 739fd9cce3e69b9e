//! Dense symplectic linear algebra on Gaussian covariance matrices.

mod cm;
mod entropy;
mod homodyne;
mod spectrum;

pub use cm::{
    apply_symplectic, beam_splitter, make_env_cm, make_epr_cm, partial_trace, CovarianceMatrix,
    SymplecticForm, SymplecticTransform,
};
pub use entropy::{
    coherent_information, entropy_function, von_neumann_entropy, EntanglementReport,
};
pub use homodyne::{homodyne_condition, Quadrature};
pub use spectrum::{
    partial_transpose, physical_tolerance, pts_min_eigenvalue, symplectic_eigenvalues,
    two_mode_pts_eigenvalues, two_mode_symplectic_eigenvalues,
};

/// Relative tolerance for the symmetry check of a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Absolute tolerance for `S Omega S^T = Omega`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Least tolerance below 1 for a symplectic eigenvalue to count as physical.
pub const PHYSICAL_TOL: f64 = 1e-9;
