//! The distorted Fourier transform pair on the half line
//!   ĝ(σ) = ∫₀^∞ e_q(σ, s) u(s) ds,    u(r) = ½∫₀^∞ ĝ(σ) e_q(σ, r) dσ,
//! Plancherel ∫u² dr = ½∫ĝ² dσ, and the functional calculus
//!   [F(H)u](r) = ½∫ F(σ²) ĝ(σ) e_q(σ, r) dσ.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::profile::{trapezoid_weights, ComplexProfile, RadialProfile};
use crate::eigenbasis::{e_row, spectral_density, Charge};
use crate::error::{CoulombError, Result};
use crate::quad::{gl16, pairwise_sum, pairwise_sum_c};

/// Minimum number of quadrature nodes per oscillation period.
pub const NODES_PER_PERIOD: f64 = 8.0;
/// Default σ cut-off.
pub const DEFAULT_SIGMA_MAX: f64 = 60.0;

/// A composite Gauss–Legendre rule in σ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panel_width: f64,
}

impl SigmaGrid {
    /// 16-point panels on [`lo`, `hi`] no wider than a quarter period of
    /// e^{iσ·r_scale}.
    pub fn range(lo: f64, hi: f64, r_scale: f64) -> Result<SigmaGrid> {
        if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
            return Err(CoulombError::domain("sigma_max", format!("need 0 <= lo < hi, got [{lo}, {hi}]")));
        }
        if !(r_scale > 0.0) {
            return Err(CoulombError::domain("r_scale", format!("must be > 0, got {r_scale}")));
        }
        let quarter = 0.5 * PI / r_scale;
        let panels = ((hi - lo) / quarter).ceil().max(1.0) as usize;
        let (nodes, weights) = crate::quad::uniform_panels(lo, hi, panels, gl16());
        Ok(SigmaGrid { nodes, weights, panel_width: (hi - lo) / panels as f64 })
    }

    /// Grid on [0, σ_max] resolving radii up to `r_scale`.
    pub fn new(sigma_max: f64, r_scale: f64) -> Result<SigmaGrid> {
        Self::range(0.0, sigma_max, r_scale)
    }

    /// Right end of the grid (largest node).
    pub fn sigma_max(&self) -> f64 {
        self.nodes.last().copied().unwrap_or(0.0)
    }
}

/// ĝ on a σ grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformedProfile {
    pub sigma_nodes: Vec<f64>,
    /// σ-quadrature weights of the grid the transform was computed on.
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
    /// ρ′_q(σ) at the nodes; the e-normalized synthesis measure is dσ/2 and
    /// ĝ = 2μ·ĝ_φ with ρ′ = 2μ² relates it to the φ-normalized transform.
    pub density_at_nodes: Vec<f64>,
    pub charge: f64,
}

impl TransformedProfile {
    /// ½∫ĝ² dσ.
    pub fn norm_sq(&self) -> f64 {
        let t: Vec<f64> = self.values.iter().zip(&self.weights).map(|(v, w)| 0.5 * w * v * v).collect();
        pairwise_sum(&t)
    }

    /// ½∫ĝ·ĥ dσ on a common grid.
    pub fn dot(&self, other: &TransformedProfile) -> Result<f64> {
        if self.sigma_nodes != other.sigma_nodes {
            return Err(CoulombError::Input("transforms live on different grids".into()));
        }
        let t: Vec<f64> = self.values.iter().zip(&other.values).zip(&self.weights).map(|((a, b), w)| 0.5 * w * a * b).collect();
        Ok(pairwise_sum(&t))
    }
}

/// Errors if the profile's sampling cannot resolve e(σ, ·) at σ_max.
pub fn check_profile_resolution(f: &RadialProfile, sigma_max: f64) -> Result<()> {
    f.validate()?;
    let (a, b) = f.support;
    if !(a > 0.0) {
        return Err(CoulombError::Resolution("profile support touches r = 0".into()));
    }
    let spacing = (b - a).max(f64::MIN_POSITIVE) / f.nodes.len() as f64;
    let period = 2.0 * PI / sigma_max;
    if period < NODES_PER_PERIOD * spacing {
        return Err(CoulombError::Resolution(format!(
            "{:.1} nodes per period at sigma_max = {sigma_max} (need {NODES_PER_PERIOD}); resample the profile",
            period / spacing
        )));
    }
    Ok(())
}

fn check_sigma_resolution(nodes: &[f64], r_max: f64) -> Result<()> {
    let mut gap: f64 = 0.0;
    for w in nodes.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    let period = 2.0 * PI / r_max;
    if period < NODES_PER_PERIOD * gap {
        return Err(CoulombError::Resolution(format!(
            "sigma grid gap {gap:.3e} too coarse for r up to {r_max} (need <= {:.3e})",
            period / NODES_PER_PERIOD
        )));
    }
    Ok(())
}

fn check_radii(r_grid: &[f64]) -> Result<()> {
    if r_grid.is_empty() || r_grid.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(CoulombError::Input("output radii must be nonempty, finite and > 0".into()));
    }
    if r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoulombError::Input("output radii must be strictly increasing".into()));
    }
    Ok(())
}

/// ĝ(σᵢ) = ∫ e_q(σᵢ, s) u(s) ds by the profile's quadrature.
pub fn forward_transform(q: Charge, f: &RadialProfile, grid: &SigmaGrid) -> Result<TransformedProfile> {
    check_profile_resolution(f, grid.sigma_max())?;
    let values = grid
        .nodes
        .par_iter()
        .map(|&s| -> Result<f64> {
            let row = e_row(q, s, &f.nodes)?;
            let t: Vec<f64> = row.iter().zip(&f.values).zip(&f.weights).map(|((e, u), w)| e * u * w).collect();
            Ok(pairwise_sum(&t))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(TransformedProfile {
        sigma_nodes: grid.nodes.clone(),
        weights: grid.weights.clone(),
        values,
        density_at_nodes: grid.nodes.iter().map(|&s| spectral_density(q, s).density).collect(),
        charge: q.value(),
    })
}

/// [F(H)u](rᵢ) = ½∫ F(σ²) ĝ(σ) e_q(σ, rᵢ) dσ on the transform's σ grid.
pub fn synthesize<F>(q: Charge, ghat: &TransformedProfile, weight: F, r_grid: &[f64]) -> Result<ComplexProfile>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    check_radii(r_grid)?;
    check_sigma_resolution(&ghat.sigma_nodes, *r_grid.last().unwrap())?;
    // Rows e_q(σ_k, ·) computed in parallel; the reduction over k is a fixed
    // pairwise tree per output radius.
    let rows: Vec<Vec<f64>> = ghat
        .sigma_nodes
        .par_iter()
        .map(|&s| e_row(q, s, r_grid))
        .collect::<Result<Vec<_>>>()?;
    let coef: Vec<Complex64> = ghat
        .sigma_nodes
        .iter()
        .zip(&ghat.values)
        .zip(&ghat.weights)
        .map(|((&s, &g), &w)| weight(s * s) * (0.5 * w * g))
        .collect();
    let values: Vec<Complex64> = (0..r_grid.len())
        .into_par_iter()
        .map(|i| {
            let t: Vec<Complex64> = coef.iter().zip(&rows).map(|(c, row)| c * row[i]).collect();
            pairwise_sum_c(&t)
        })
        .collect();
    Ok(ComplexProfile { nodes: r_grid.to_vec(), values, weights: trapezoid_weights(r_grid) })
}

/// u(rᵢ) = ½∫ ĝ(σ) e_q(σ, rᵢ) dσ.
pub fn inverse_transform(q: Charge, ghat: &TransformedProfile, r_grid: &[f64]) -> Result<RadialProfile> {
    let c = synthesize(q, ghat, |_| Complex64::new(1.0, 0.0), r_grid)?;
    Ok(RadialProfile {
        nodes: c.nodes,
        values: c.values.iter().map(|v| v.re).collect(),
        weights: c.weights,
        support: (r_grid[0], *r_grid.last().unwrap()),
    })
}

/// Forward transform on `grid` followed by F-weighted synthesis at `r_grid`.
pub fn functional_calculus<F>(
    q: Charge,
    weight: F,
    f: &RadialProfile,
    grid: &SigmaGrid,
    r_grid: &[f64],
) -> Result<ComplexProfile>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let ghat = forward_transform(q, f, grid)?;
    synthesize(q, &ghat, weight, r_grid)
}

/// Settings for [`plancherel_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelConfig {
    /// σ range always integrated.
    pub sigma_start: f64,
    /// Stop when a block's contribution falls below `tail_tol`·rhs.
    pub tail_tol: f64,
    /// Width of each extension block in σ.
    pub block: f64,
    /// Hard cap on σ.
    pub sigma_cap: f64,
}

impl Default for PlancherelConfig {
    fn default() -> Self {
        PlancherelConfig { sigma_start: 20.0, tail_tol: 1e-10, block: 10.0, sigma_cap: 400.0 }
    }
}

/// Plancherel comparison ∫u² dr vs ½∫ĝ² dσ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelReport {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    /// σ at which the integration stopped.
    pub sigma_max: f64,
    /// Contribution of the last block relative to rhs.
    pub tail: f64,
}

/// Plancherel check with adaptive σ truncation.
pub fn plancherel_check(q: Charge, f: &RadialProfile, cfg: &PlancherelConfig) -> Result<PlancherelReport> {
    let lhs = f.norm_sq();
    let r_scale = f.support.1;
    let mut parts = Vec::new();
    let mut hi = cfg.sigma_start.min(cfg.sigma_cap);
    let first = forward_transform(q, f, &SigmaGrid::new(hi, r_scale)?)?;
    parts.push(first.norm_sq());
    let mut quiet = 0;
    let mut tail = f64::INFINITY;
    while quiet < 2 {
        if hi >= cfg.sigma_cap {
            let rhs = pairwise_sum(&parts);
            return Err(CoulombError::Convergence {
                msg: format!("Plancherel tail not below {:.1e} by sigma = {}", cfg.tail_tol, cfg.sigma_cap),
                achieved: tail / rhs,
            });
        }
        let next = (hi + cfg.block).min(cfg.sigma_cap);
        let blk = forward_transform(q, f, &SigmaGrid::range(hi, next, r_scale)?)?;
        let c = blk.norm_sq();
        parts.push(c);
        let rhs = pairwise_sum(&parts);
        tail = c;
        quiet = if c <= cfg.tail_tol * rhs { quiet + 1 } else { 0 };
        hi = next;
    }
    let rhs = pairwise_sum(&parts);
    Ok(PlancherelReport { lhs, rhs, rel_err: ((lhs - rhs) / lhs).abs(), sigma_max: hi, tail: tail / rhs })
}
