//! Synthesis of e^{itσ²}f̂(σ) on a frequency-adapted σ grid.

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{e_point, phase_adapted_grid, smooth_step, SpectralTable};
use super::{EvolutionResult, QuadratureConfig};
use crate::eigenbasis::{e_row, Charge};
use crate::error::{CoulombError, Result};
use crate::quad::{gl16, pairwise_sum_c, uniform_panels};
use crate::transform::{ComplexProfile, RadialProfile};

/// Largest |t| accepted by the propagator.
pub const MAX_TIME: f64 = 1e4;

/// Number of partial sums the σ nodes are split into; fixed so that the
/// reduction tree depends only on the grid.
const CHUNKS: usize = 256;

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t.abs() > MAX_TIME {
        return Err(CoulombError::domain("t", format!("need |t| <= {MAX_TIME}, got {t}")));
    }
    Ok(())
}

/// Gauss–Legendre radial grid that carries (up to the table's tail) all of
/// the mass of u(t): panels one wavelength at σ_max wide on (0, R] with
/// R = b + 2|t|σ_max + 4.
pub fn default_output_grid(table: &SpectralTable, t: f64) -> (Vec<f64>, Vec<f64>) {
    let r_end = table.support.1 + 2.0 * t.abs() * table.hi() + 4.0;
    let width = (2.0 * std::f64::consts::PI / table.hi()).min(0.5);
    let panels = (r_end / width).ceil() as usize;
    uniform_panels(0.0, r_end, panels, gl16())
}

fn synthesize(q: Charge, table: &SpectralTable, t: f64, r_grid: &[f64], cfg: &QuadratureConfig, nodes_per_period: f64) -> Result<Vec<Complex64>> {
    let r_max = *r_grid.last().unwrap();
    let b = table.support.1;
    let omega = |s: f64| 2.0 * t.abs() * s + r_max + b;
    let (sn, sw) = phase_adapted_grid(table.lo(), table.hi(), omega, nodes_per_period, cfg.max_sigma_nodes)?;
    let chunk = sn.len().div_ceil(CHUNKS).max(1);
    let partials: Vec<Vec<Complex64>> = sn
        .par_chunks(chunk)
        .zip(sw.par_chunks(chunk))
        .map(|(ns, ws)| -> Result<Vec<Complex64>> {
            let mut acc = vec![Complex64::new(0.0, 0.0); r_grid.len()];
            for (&s, &w) in ns.iter().zip(ws) {
                let coef = Complex64::from_polar(0.5 * w, t * s * s) * table.eval(s);
                if coef == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = e_row(q, s, r_grid)?;
                for (a, e) in acc.iter_mut().zip(&row) {
                    *a += coef * e;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    Ok((0..r_grid.len())
        .map(|i| {
            let col: Vec<Complex64> = partials.iter().map(|p| p[i]).collect();
            pairwise_sum_c(&col)
        })
        .collect())
}

/// e^{itH} applied to the tabulated data at the radii `r_grid` (increasing,
/// positive). `weights` are the radial quadrature weights stored in the
/// output profile (trapezoid weights when `None`).
pub fn propagate(
    q: Charge,
    table: &SpectralTable,
    t: f64,
    r_grid: &[f64],
    weights: Option<Vec<f64>>,
    cfg: &QuadratureConfig,
) -> Result<EvolutionResult> {
    check_time(t)?;
    if r_grid.is_empty() || r_grid.iter().any(|r| !(*r > 0.0) || !r.is_finite()) || r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoulombError::Input("output radii must be positive, finite and increasing".into()));
    }
    let values = synthesize(q, table, t, r_grid, cfg, cfg.nodes_per_period)?;
    // Error estimate: the same synthesis with half the node density on a
    // subsample of the radii, plus the dropped tail of f̂.
    let stride = r_grid.len().div_ceil(32);
    let sub: Vec<f64> = r_grid.iter().step_by(stride).copied().collect();
    let coarse = synthesize(q, table, t, &sub, cfg, 0.5 * cfg.nodes_per_period)?;
    let alias = coarse.iter().zip(values.iter().step_by(stride)).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let quad_err = alias + table.tail * table.peak;
    let weights = weights.unwrap_or_else(|| crate::transform::trapezoid_weights(r_grid));
    let profile = ComplexProfile { nodes: r_grid.to_vec(), values, weights };
    let sup_norm = profile.sup_3d();
    Ok(EvolutionResult { t, profile, sup_norm, quad_err })
}

/// u(t) = e^{itH}f on [`default_output_grid`].
pub fn evolve(q: Charge, f: &RadialProfile, t: f64, cfg: &QuadratureConfig) -> Result<EvolutionResult> {
    check_time(t)?;
    let table = SpectralTable::build(q, f, None, cfg)?;
    let (nodes, weights) = default_output_grid(&table, t);
    propagate(q, &table, t, &nodes, Some(weights), cfg)
}

/// u(t) = e^{itH}f at the given radii.
pub fn evolve_at(q: Charge, f: &RadialProfile, t: f64, cfg: &QuadratureConfig, r_grid: &[f64]) -> Result<EvolutionResult> {
    check_time(t)?;
    let table = SpectralTable::build(q, f, None, cfg)?;
    propagate(q, &table, t, r_grid, None, cfg)
}

/// e^{itH} applied to complex data (for instance an earlier output). The
/// data are treated as supported on their node range; `r_grid = None`
/// selects [`default_output_grid`].
pub fn evolve_complex(
    q: Charge,
    f: &ComplexProfile,
    t: f64,
    cfg: &QuadratureConfig,
    r_grid: Option<&[f64]>,
) -> Result<EvolutionResult> {
    check_time(t)?;
    let n = f.nodes.len();
    if n == 0 || f.values.len() != n || f.weights.len() != n {
        return Err(CoulombError::Input("complex profile lengths differ or are empty".into()));
    }
    let support = (f.nodes[0], f.nodes[n - 1]);
    let part = |g: fn(&Complex64) -> f64| RadialProfile {
        nodes: f.nodes.clone(),
        values: f.values.iter().map(g).collect(),
        weights: f.weights.clone(),
        support,
    };
    let (re, im) = (part(|z| z.re), part(|z| z.im));
    let table = SpectralTable::build(q, &re, Some(&im), cfg)?;
    match r_grid {
        Some(r) => propagate(q, &table, t, r, None, cfg),
        None => {
            let (nodes, weights) = default_output_grid(&table, t);
            propagate(q, &table, t, &nodes, Some(weights), cfg)
        }
    }
}

/// u(t, r) at one radius by stationary-phase localisation: for |t| ≥ 1 the
/// σ integral is restricted to a smooth window of half-width
/// `cfg.window/√|t|` around σ* = (r − s̄)/(2|t|), s̄ the centre of the data's
/// support. Outside the window the phase tσ² ∓ σ(r − s) has derivative at
/// least cfg.window·√|t|, so the dropped part is smaller than any power of
/// that number.
pub fn evolve_point(q: Charge, table: &SpectralTable, t: f64, r: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
    check_time(t)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(CoulombError::domain("r", format!("must be > 0, got {r}")));
    }
    let at = t.abs();
    let centre_s = 0.5 * (table.support.0 + table.support.1);
    let centre = (r - centre_s).max(0.0) / (2.0 * at.max(1e-300));
    let half = if at >= 1.0 { cfg.window / at.sqrt() } else { f64::INFINITY };
    let lo = table.lo().max(centre - half);
    let hi = table.hi().min(centre + half);
    if !(hi > lo) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let omega = |s: f64| 2.0 * at * s + r + table.support.1;
    let (sn, sw) = phase_adapted_grid(lo, hi, omega, cfg.nodes_per_period, cfg.max_sigma_nodes)?;
    let terms: Vec<Complex64> = sn
        .iter()
        .zip(&sw)
        .map(|(&s, &w)| -> Result<Complex64> {
            let chi = if half.is_finite() { 1.0 - smooth_step(((s - centre).abs() - 0.5 * half) / (0.5 * half), cfg.cutoff_order) } else { 1.0 };
            let g = table.eval(s);
            if chi == 0.0 || g == Complex64::new(0.0, 0.0) {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(Complex64::from_polar(0.5 * w * chi, t * s * s) * g * e_point(q, s, r)?)
        })
        .collect::<Result<_>>()?;
    Ok(pairwise_sum_c(&terms))
}
