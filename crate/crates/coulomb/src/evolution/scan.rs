//! Empirical dispersive decay: t^{3/2}·‖e^{itH}f‖_∞/‖f‖_{L¹(ℝ³)} over a
//! range of times.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::SpectralTable;
use super::propagator::evolve_point;
use super::QuadratureConfig;
use crate::eigenbasis::Charge;
use crate::error::{CoulombError, Result};
use crate::transform::RadialProfile;

/// Outcome of a decay scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayVerdict {
    /// max/median ratio ≤ 3 and |slope of log ratio| ≤ 0.2.
    Bounded,
    Unbounded,
    /// Some quadrature error estimate exceeds 5% of its sup norm.
    Inconclusive,
}

/// Sup norms and decay ratios on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayScan {
    pub t_values: Vec<f64>,
    /// ‖u(t)‖_∞ of the 3D function g = u/r.
    pub sup_norms: Vec<f64>,
    /// t^{3/2}·‖u(t)‖_∞/‖f‖_{L¹(ℝ³)}.
    pub ratios: Vec<f64>,
    /// Radius where the sup is attained.
    pub argmax_r: Vec<f64>,
    /// Estimated error of each sup norm.
    pub quad_errs: Vec<f64>,
    /// ‖f‖_{L¹(ℝ³)} = 4π∫|u|r dr.
    pub l1_norm: f64,
    /// Least-squares slope of log ‖u(t)‖_∞ against log t.
    pub slope_sup: f64,
    /// Least-squares slope of log ratio against log t.
    pub slope_ratio: f64,
    /// max ratio / median ratio.
    pub max_over_median: f64,
    pub verdict: DecayVerdict,
}

/// Least-squares slope of log y against log x.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// |u(t, r)|/r maximised over the wave-packet front.
///
/// The front is parametrised by σ* = (r − s̄)/(2t) over the σ range where
/// |f̂(σ)|/σ exceeds 5% of its maximum (48 log-spaced probes), followed by a
/// golden-section refinement around the best probe.
fn front_sup(q: Charge, table: &SpectralTable, t: f64, cfg: &QuadratureConfig) -> Result<(f64, f64, f64)> {
    let (sa, sb) = table.significant_range(0.05);
    let centre = 0.5 * (table.support.0 + table.support.1);
    let at = t.abs();
    let probes = 48;
    let radii: Vec<f64> = (0..probes)
        .map(|i| {
            let s = sa * (sb / sa).powf(i as f64 / (probes - 1) as f64);
            2.0 * at * s + centre
        })
        .collect();
    let g = |r: f64| -> Result<f64> { Ok(evolve_point(q, table, t, r, cfg)?.norm() / r) };
    let vals: Vec<f64> = radii.iter().map(|&r| g(r)).collect::<Result<_>>()?;
    let k = vals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, _)| i).unwrap();
    let (mut a, mut b) = (radii[k.saturating_sub(1)], radii[(k + 1).min(probes - 1)]);
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - phi * (b - a), a + phi * (b - a));
    let (mut f1, mut f2) = (g(x1)?, g(x2)?);
    let (mut best_r, mut best) = (radii[k], vals[k]);
    for _ in 0..40 {
        if b - a < 1e-6 * b {
            break;
        }
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2)?;
        }
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f > best {
                best = f;
                best_r = x;
            }
        }
    }
    // Error estimate: wider window and denser nodes at the maximiser.
    let fine = QuadratureConfig { window: 1.5 * cfg.window, nodes_per_period: 1.5 * cfg.nodes_per_period, ..*cfg };
    let check = evolve_point(q, table, t, best_r, &fine)?.norm() / best_r;
    Ok((best, best_r, (check - best).abs()))
}

/// Scans t^{3/2}‖e^{itH}f‖_∞/‖f‖_{L¹(ℝ³)} over `t_grid` (increasing,
/// each t ≥ 1). Times are processed in parallel.
pub fn decay_scan(q: Charge, f: &RadialProfile, t_grid: &[f64], cfg: &QuadratureConfig) -> Result<DecayScan> {
    if t_grid.len() < 2 {
        return Err(CoulombError::Input("decay scan needs at least two times".into()));
    }
    if t_grid.iter().any(|t| !(*t >= 1.0) || *t > super::MAX_TIME) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoulombError::domain("t_grid", "times must be increasing and within [1, 1e4]"));
    }
    let table = SpectralTable::build(q, f, None, cfg)?;
    let l1 = f.l1_3d();
    if !(l1 > 0.0) {
        return Err(CoulombError::Input("profile has zero L¹ norm".into()));
    }
    let rows: Vec<(f64, f64, f64)> = t_grid.par_iter().map(|&t| front_sup(q, &table, t, cfg)).collect::<Result<_>>()?;
    let sup_norms: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let argmax_r: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let quad_errs: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let ratios: Vec<f64> = t_grid.iter().zip(&sup_norms).map(|(t, s)| t.powf(1.5) * s / l1).collect();
    let slope_sup = log_log_slope(t_grid, &sup_norms);
    let slope_ratio = log_log_slope(t_grid, &ratios);
    let max_over_median = ratios.iter().cloned().fold(0.0, f64::max) / median(&ratios);
    let inconclusive = quad_errs.iter().zip(&sup_norms).any(|(e, s)| *e > 0.05 * s);
    let verdict = if inconclusive {
        DecayVerdict::Inconclusive
    } else if max_over_median <= 3.0 && slope_ratio.abs() <= 0.2 {
        DecayVerdict::Bounded
    } else {
        DecayVerdict::Unbounded
    };
    Ok(DecayScan {
        t_values: t_grid.to_vec(),
        sup_norms,
        ratios,
        argmax_r,
        quad_errs,
        l1_norm: l1,
        slope_sup,
        slope_ratio,
        max_over_median,
        verdict,
    })
}
