//! The propagator e^{itH} on radial data, an independent Crank–Nicolson
//! oracle, the dispersive decay scan and mollified kernel probes.
//!
//! Time convention: u(t) = e^{itH}f solves ∂ₜu = iHu, and in spectral
//! variables û(t, σ) = e^{itσ²} f̂(σ), so that
//!   u(t, r) = ½∫₀^∞ e^{itσ²} f̂(σ) e_q(σ, r) dσ.
//! All profiles are half-line amplitudes u = r·g; 3D sup norms are taken of
//! g = u/r.

mod cn;
mod grid;
mod kernel;
mod propagator;
mod scan;

use serde::{Deserialize, Serialize};

use crate::eigenbasis::DEFAULT_C;
use crate::transform::ComplexProfile;

pub use cn::{cn_extrapolated, cn_oracle, CnConfig, CnScheme};
pub use grid::{chi_high, chi_low, e_point, phase_adapted_grid, smooth_step, SpectralTable};
pub use kernel::{
    kernel_estimate, kernel_matrix, phase_derivative, stationary_point, stationary_point_locator, stationary_points, KernelEstimate,
    KernelMatrix, PhaseBranch, PhasePairing,
};
pub use propagator::{default_output_grid, evolve, evolve_at, evolve_complex, evolve_point, propagate, MAX_TIME};
pub use scan::{decay_scan, log_log_slope, DecayScan, DecayVerdict};

/// u(t, ·) on a radial grid with a quadrature error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionResult {
    pub t: f64,
    pub profile: ComplexProfile,
    /// max |u(t, r)|/r over the grid (sup norm of the 3D function).
    pub sup_norm: f64,
    /// Estimated absolute error of the values of u.
    pub quad_err: f64,
}

/// Numerical settings shared by the propagator, the scan and the kernel probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Low/high energy split c of the kernel: χ_c(σ/q) = 1 for σ/q ≤ 2c/3,
    /// 0 for σ/q ≥ c.
    pub c: f64,
    /// Near/far split: (r, s) counts as near-diagonal when max/min ≤ k.
    pub k: f64,
    /// Smoothness of the cut-offs: 0 for C^∞, n for the C^n smoothstep.
    pub cutoff_order: u32,
    /// Relative amplitude below which the tail of f̂ is dropped.
    pub panel_tol: f64,
    /// Gauss–Legendre nodes per local oscillation period.
    pub nodes_per_period: f64,
    /// Fixed σ cut-off; `None` chooses it from `panel_tol`.
    pub sigma_max: Option<f64>,
    /// Largest σ the adaptive cut-off may reach.
    pub sigma_cap: f64,
    /// Upper bound for the first mollifier width ε in e^{−εσ²}.
    pub mollifier_eps: f64,
    /// Number of ε-halvings (≥ 3 gives two Richardson extrapolants).
    pub mollifier_levels: usize,
    /// Stationary-phase window half-width × √t used by pointwise evaluation.
    pub window: f64,
    /// Refuse grids with more σ nodes than this.
    pub max_sigma_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            c: DEFAULT_C,
            k: 4.0,
            cutoff_order: 0,
            panel_tol: 1e-4,
            nodes_per_period: 8.0,
            sigma_max: None,
            sigma_cap: 400.0,
            mollifier_eps: 1e-2,
            mollifier_levels: 3,
            window: 20.0,
            max_sigma_nodes: 20_000_000,
        }
    }
}
