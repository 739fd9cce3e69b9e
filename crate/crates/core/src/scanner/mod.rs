//! Rasterized classification of the correlation plane `(g, g')`.
//!
//! Each cell is evaluated at its center. Row `j` of the grid holds the cells
//! with `g' = gp_at(j)`; within a row `g` increases with the column index,
//! so `cells[j * resolution + i]` sits at `(g_at(i), gp_at(j))`.

mod contour;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::environment::{
    classify_environment, eb_threshold, EnvClass, EnvironmentParams, Separability,
};
use crate::error::{Error, Result};
use crate::protocols::{direct_eps_asymptotic, swap_eps_asymptotic};

pub use contour::{boundary_curves, march, Contour};

/// `exp(-1)`, the one-way distillability threshold on `eps`.
pub fn distillability_threshold() -> f64 {
    (-1f64).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OmegaMode {
    AtEbThreshold,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Protocol {
    Direct,
    Swap,
    EnvironmentOnly,
}

impl Protocol {
    pub fn as_str(self) -> &'static str {
        match self {
            Protocol::Direct => "direct",
            Protocol::Swap => "swap",
            Protocol::EnvironmentOnly => "environment",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Activation {
    None,
    Entangling,
    Distillable,
}

impl Activation {
    /// `eps < e^-1` distillable, `eps < 1` entangling, otherwise none.
    pub fn from_eps(eps: f64) -> Self {
        if eps < distillability_threshold() {
            Activation::Distillable
        } else if eps < 1.0 {
            Activation::Entangling
        } else {
            Activation::None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Activation::None => "None",
            Activation::Entangling => "Entangling",
            Activation::Distillable => "Distillable",
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Activation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "None" => Ok(Activation::None),
            "Entangling" => Ok(Activation::Entangling),
            "Distillable" => Ok(Activation::Distillable),
            other => Err(format!("unknown activation {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSpec {
    tau: f64,
    omega_mode: OmegaMode,
    protocol: Protocol,
    g_range: (f64, f64),
    gp_range: (f64, f64),
    resolution: usize,
}

impl ScanSpec {
    pub fn new(
        tau: f64,
        omega_mode: OmegaMode,
        protocol: Protocol,
        g_range: (f64, f64),
        gp_range: (f64, f64),
        resolution: usize,
    ) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::InvalidScan(format!("tau = {tau} outside (0, 1)")));
        }
        if let OmegaMode::Fixed(omega) = omega_mode {
            if !(omega >= 1.0 && omega.is_finite()) {
                return Err(Error::InvalidScan(format!("omega = {omega} must be >= 1")));
            }
        }
        for (name, (lo, hi)) in [("g", g_range), ("g'", gp_range)] {
            if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                return Err(Error::InvalidScan(format!(
                    "{name} range [{lo}, {hi}] is empty"
                )));
            }
        }
        if resolution < 2 {
            return Err(Error::InvalidScan(format!("resolution {resolution} < 2")));
        }
        Ok(Self {
            tau,
            omega_mode,
            protocol,
            g_range,
            gp_range,
            resolution,
        })
    }

    /// Window `[-omega, omega]^2`, the bounding box of the bona-fide region.
    pub fn with_default_window(
        tau: f64,
        omega_mode: OmegaMode,
        protocol: Protocol,
        resolution: usize,
    ) -> Result<Self> {
        let omega = resolve_omega(tau, omega_mode)?;
        Self::new(
            tau,
            omega_mode,
            protocol,
            (-omega, omega),
            (-omega, omega),
            resolution,
        )
    }

    /// The standard correlation-plane diagram: `omega = omega_EB(tau)`,
    /// default window.
    pub fn standard(tau: f64, protocol: Protocol, resolution: usize) -> Result<Self> {
        Self::with_default_window(tau, OmegaMode::AtEbThreshold, protocol, resolution)
    }

    pub fn with_resolution(&self, resolution: usize) -> Result<Self> {
        Self::new(
            self.tau,
            self.omega_mode,
            self.protocol,
            self.g_range,
            self.gp_range,
            resolution,
        )
    }

    pub fn with_protocol(&self, protocol: Protocol) -> Self {
        Self {
            protocol,
            ..self.clone()
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn omega_mode(&self) -> OmegaMode {
        self.omega_mode
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    pub fn g_range(&self) -> (f64, f64) {
        self.g_range
    }

    pub fn gp_range(&self) -> (f64, f64) {
        self.gp_range
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn omega(&self) -> f64 {
        resolve_omega(self.tau, self.omega_mode).expect("validated on construction")
    }

    /// Center of column `i`.
    pub fn g_at(&self, i: usize) -> f64 {
        cell_center(self.g_range, self.resolution, i)
    }

    /// Center of row `j`.
    pub fn gp_at(&self, j: usize) -> f64 {
        cell_center(self.gp_range, self.resolution, j)
    }

    pub fn n_cells(&self) -> usize {
        self.resolution * self.resolution
    }
}

fn resolve_omega(tau: f64, mode: OmegaMode) -> Result<f64> {
    match mode {
        OmegaMode::AtEbThreshold => Ok(eb_threshold(tau)?.omega),
        OmegaMode::Fixed(omega) => Ok(omega),
    }
}

fn cell_center((lo, hi): (f64, f64), resolution: usize, i: usize) -> f64 {
    lo + (i as f64 + 0.5) * (hi - lo) / resolution as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellClass {
    pub env_class: Separability,
    pub activation: Activation,
    /// Protocol `eps` (or the environment's own PTS eigenvalue for
    /// [`Protocol::EnvironmentOnly`]); absent for forbidden cells.
    pub eps_value: Option<f64>,
}

/// Protocol `eps` at a point, `None` when the environment is forbidden.
pub(crate) fn protocol_eps(
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
    protocol: Protocol,
) -> Option<f64> {
    let env = EnvironmentParams::new(tau, omega, g, gp).ok()?;
    match protocol {
        Protocol::Direct => direct_eps_asymptotic(&env).ok(),
        Protocol::Swap => swap_eps_asymptotic(&env).ok(),
        Protocol::EnvironmentOnly => classify_environment(omega, g, gp).ok()?.env_pts,
    }
}

pub fn evaluate_cell(
    tau: f64,
    omega: f64,
    g: f64,
    gp: f64,
    protocol: Protocol,
) -> Result<CellClass> {
    let EnvClass { separability, .. } = classify_environment(omega, g, gp)?;
    if separability == Separability::Forbidden {
        return Ok(CellClass {
            env_class: separability,
            activation: Activation::None,
            eps_value: None,
        });
    }
    let eps = protocol_eps(tau, omega, g, gp, protocol);
    let activation = match (protocol, eps) {
        (Protocol::EnvironmentOnly, _) | (_, None) => Activation::None,
        (_, Some(eps)) => Activation::from_eps(eps),
    };
    Ok(CellClass {
        env_class: separability,
        activation,
        eps_value: eps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub env_class: Separability,
    pub activation: Activation,
    pub count: usize,
    pub fraction: f64,
}

/// Cell counts per (environment class, activation) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub entries: Vec<SummaryEntry>,
}

/// The seven admissible (class, activation) pairs, in reporting order.
pub const SUMMARY_KEYS: [(Separability, Activation); 7] = [
    (Separability::Forbidden, Activation::None),
    (Separability::Separable, Activation::None),
    (Separability::Separable, Activation::Entangling),
    (Separability::Separable, Activation::Distillable),
    (Separability::Entangled, Activation::None),
    (Separability::Entangled, Activation::Entangling),
    (Separability::Entangled, Activation::Distillable),
];

impl Summary {
    pub fn from_labels<I>(labels: I) -> Self
    where
        I: IntoIterator<Item = (Separability, Activation)>,
    {
        let mut counts = [0usize; SUMMARY_KEYS.len()];
        let mut total = 0;
        for label in labels {
            let k = SUMMARY_KEYS
                .iter()
                .position(|key| *key == label)
                .expect("cell label violates the activation invariant");
            counts[k] += 1;
            total += 1;
        }
        let entries = SUMMARY_KEYS
            .iter()
            .zip(counts)
            .map(|(&(env_class, activation), count)| SummaryEntry {
                env_class,
                activation,
                count,
                fraction: if total == 0 {
                    0.0
                } else {
                    count as f64 / total as f64
                },
            })
            .collect();
        Summary { total, entries }
    }

    pub fn count(&self, env_class: Separability, activation: Activation) -> usize {
        self.entries
            .iter()
            .find(|e| e.env_class == env_class && e.activation == activation)
            .map_or(0, |e| e.count)
    }

    pub fn fraction(&self, env_class: Separability, activation: Activation) -> f64 {
        self.entries
            .iter()
            .find(|e| e.env_class == env_class && e.activation == activation)
            .map_or(0.0, |e| e.fraction)
    }

    /// Cells with `env_class` and any activation.
    pub fn activated(&self, env_class: Separability) -> usize {
        self.entries
            .iter()
            .filter(|e| e.env_class == env_class && e.activation != Activation::None)
            .map(|e| e.count)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    pub spec: ScanSpec,
    pub cells: Vec<CellClass>,
    pub summary: Summary,
}

impl ScanGrid {
    pub fn cell(&self, i: usize, j: usize) -> &CellClass {
        &self.cells[j * self.spec.resolution + i]
    }

    /// `(g, g', cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &CellClass)> + '_ {
        let n = self.spec.resolution;
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.spec.g_at(k % n), self.spec.gp_at(k / n), c))
    }
}

/// Classifies every cell of the grid. Cells are evaluated in parallel on
/// the current rayon pool; the output does not depend on scheduling.
pub fn scan(spec: &ScanSpec) -> ScanGrid {
    let n = spec.resolution;
    let omega = spec.omega();
    let cells: Vec<CellClass> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            evaluate_cell(
                spec.tau,
                omega,
                spec.g_at(k % n),
                spec.gp_at(k / n),
                spec.protocol,
            )
            .expect("spec parameters validated on construction")
        })
        .collect();
    let summary = Summary::from_labels(cells.iter().map(|c| (c.env_class, c.activation)));
    ScanGrid {
        spec: spec.clone(),
        cells,
        summary,
    }
}

/// A separable environment that activates the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub g: f64,
    pub gp: f64,
    pub eps: f64,
}

/// Resolution of the activation search grid.
pub const WITNESS_RESOLUTION: usize = 1001;

/// Searches the bona-fide region at `omega = omega_EB(tau)` for a separable
/// environment with `eps < 1`; returns the one with the smallest `eps`.
pub fn separable_activation_exists(tau: f64, protocol: Protocol) -> Result<Option<Witness>> {
    let spec = ScanSpec::standard(tau, protocol, WITNESS_RESOLUTION)?;
    let grid = scan(&spec);
    let best = grid
        .iter()
        .filter(|(_, _, c)| {
            c.env_class == Separability::Separable && c.activation != Activation::None
        })
        .filter_map(|(g, gp, c)| c.eps_value.map(|eps| Witness { g, gp, eps }))
        .min_by(|a, b| a.eps.total_cmp(&b.eps));
    Ok(best)
}
