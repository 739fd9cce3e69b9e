//! Gaussian-state toolkit for entanglement distribution through correlated
//! thermal-loss environments.
//!
//! Two beam splitters of transmissivity `tau` mix the travelling modes with a
//! pair of environmental modes whose joint covariance matrix is
//!
//! ```text
//! V_E = [[omega I, G], [G, omega I]],   G = diag(g, g')
//! ```
//!
//! Each reduced channel is a thermal-loss channel, entanglement breaking once
//! `omega >= (1 + tau) / (1 - tau)`. The correlations in `G`, even when the
//! environment itself is separable, can re-activate the distribution of
//! entanglement, both directly and through entanglement swapping.
//!
//! Modules:
//!
//! - [`gaussian`]: covariance matrices, symplectic maps and spectra, partial
//!   transposition, entropies, homodyne conditioning.
//! - [`environment`]: bona-fide conditions and separability of the
//!   environment, entanglement-breaking threshold.
//! - [`protocols`]: direct distribution and entanglement swapping, each as an
//!   exact finite-squeezing pipeline and as large-squeezing closed forms.
//! - [`scanner`]: rasterized correlation-plane classification and contours.
//!
//! All quantities use vacuum-normalised variances (vacuum = 1), mode-major
//! quadrature ordering `(q1, p1, q2, p2, ...)` and natural logarithms.

// `!(x >= lo)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod environment;
pub mod error;
pub mod gaussian;
pub mod protocols;
pub mod scanner;

pub use environment::{
    bona_fide_check, classify_environment, eb_threshold, env_pts, BonaFide, BonaFideViolation,
    EbThreshold, EnvClass, EnvironmentParams, Separability,
};
pub use error::{Error, Result};
pub use gaussian::{
    beam_splitter, coherent_information, homodyne_condition, make_env_cm, make_epr_cm,
    pts_min_eigenvalue, symplectic_eigenvalues, von_neumann_entropy, CovarianceMatrix,
    EntanglementReport, Quadrature, SymplecticForm, SymplecticTransform,
};
pub use protocols::{EprVariances, ProtocolResult};
pub use scanner::{
    boundary_curves, scan, separable_activation_exists, Activation, CellClass, Contour, OmegaMode,
    Protocol, ScanGrid, ScanSpec, Summary, Witness,
};
