//! σ-side building blocks of the propagator: smooth cut-offs, frequency
//! adapted Gauss–Legendre grids, a fast pointwise evaluator of e, and a
//! spectrally accurate interpolation table of ĝ.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::QuadratureConfig;
use crate::eigenbasis::{e_asymptotic_value, e_basis, Charge};
use crate::error::{CoulombError, Result};
use crate::quad::gl16;
use crate::specfun::theta_phase;
use crate::transform::{forward_transform, RadialProfile, SigmaGrid};

/// Smooth monotone transition from 0 (x ≤ 0) to 1 (x ≥ 1).
///
/// `order = 0` gives the C^∞ step built from e^{−1/x}; `order = n > 0` the
/// C^n polynomial smoothstep of degree 2n + 1.
pub fn smooth_step(x: f64, order: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if order == 0 {
        let f = |y: f64| (-1.0 / y).exp();
        let (a, b) = (f(x), f(1.0 - x));
        return a / (a + b);
    }
    let n = order as i64;
    let binom = |n: i64, k: i64| -> f64 { (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    let mut s = 0.0;
    for k in 0..=n {
        s += binom(n + k, k) * binom(2 * n + 1, n - k) * (-x).powi(k as i32);
    }
    s * x.powi(order as i32 + 1)
}

/// Low-energy cut-off χ_c(σ): equal to 1 for σ ≤ 2c/3, 0 for σ ≥ c.
pub fn chi_low(sigma: f64, c: f64, order: u32) -> f64 {
    1.0 - smooth_step((sigma - 2.0 * c / 3.0) / (c / 3.0), order)
}

/// Complementary cut-off χ̃_c = 1 − χ_c.
pub fn chi_high(sigma: f64, c: f64, order: u32) -> f64 {
    1.0 - chi_low(sigma, c, order)
}

/// Composite 16-point Gauss–Legendre rule on [lo, hi] whose panels span
/// `16/nodes_per_period` periods of the local angular frequency `omega(σ)`
/// (assumed nondecreasing).
pub fn phase_adapted_grid<F>(lo: f64, hi: f64, omega: F, nodes_per_period: f64, max_nodes: usize) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(f64) -> f64,
{
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(CoulombError::domain("sigma_max", format!("empty σ range [{lo}, {hi}]")));
    }
    let periods = 16.0 / nodes_per_period;
    let width = |s: f64| periods * 2.0 * PI / omega(s).max(1e-3);
    let mut breaks = vec![lo];
    let mut s = lo;
    while s < hi {
        let h0 = width(s).min(hi - s);
        let h = width(s + h0).min(hi - s);
        s = if hi - (s + h) < 1e-12 * hi.abs().max(1.0) { hi } else { s + h };
        breaks.push(s);
        if 16 * (breaks.len() - 1) > max_nodes {
            return Err(CoulombError::Resolution(format!(
                "more than {max_nodes} σ nodes needed for {nodes_per_period} nodes per period on [{lo}, {hi}]"
            )));
        }
    }
    Ok(crate::quad::composite(&breaks, gl16()))
}

/// e_q(σ, r) at a single point, through the large-σr series when it
/// converges and the general evaluator otherwise.
pub fn e_point(q: Charge, sigma: f64, r: f64) -> Result<f64> {
    let qv = q.value();
    let (s, x) = (sigma / qv, r * qv);
    if s * x > 1.0 {
        if let Some(v) = e_asymptotic_value(s, x, theta_phase(s)?, 1e-14) {
            return Ok(v);
        }
    }
    Ok(e_basis(q, sigma, r, 1e-13)?.value)
}

const CHEB: usize = 16;

fn cheb_unit(j: usize) -> f64 {
    // Chebyshev–Lobatto points in ascending order on [0, 1].
    0.5 * (1.0 - (j as f64 * PI / CHEB as f64).cos())
}

/// ĝ tabulated on panels of 17 Chebyshev–Lobatto points and evaluated by
/// barycentric interpolation; identically zero outside `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralTable {
    pub charge: f64,
    /// Panel edges; values live on `16·panels + 1` nodes.
    pub edges: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Support of the transformed profile.
    pub support: (f64, f64),
    /// max |ĝ| over the table.
    pub peak: f64,
    /// max |ĝ| over the last block relative to `peak`.
    pub tail: f64,
}

fn transform_block(q: Charge, parts: &[&RadialProfile], sigmas: &[f64]) -> Result<Vec<Complex64>> {
    let grid = SigmaGrid { nodes: sigmas.to_vec(), weights: vec![0.0; sigmas.len()], panel_width: 0.0 };
    let re = forward_transform(q, parts[0], &grid)?.values;
    let im = match parts.get(1) {
        Some(p) => forward_transform(q, p, &grid)?.values,
        None => vec![0.0; re.len()],
    };
    Ok(re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect())
}

impl SpectralTable {
    /// Tabulates ĝ = ĝ[re] + i·ĝ[im]. The upper end is `cfg.sigma_max` when
    /// set; otherwise the table grows in blocks until |ĝ| stays below
    /// `cfg.panel_tol`·peak for two consecutive blocks.
    pub fn build(q: Charge, re: &RadialProfile, im: Option<&RadialProfile>, cfg: &QuadratureConfig) -> Result<SpectralTable> {
        re.validate()?;
        let mut parts = vec![re];
        let mut support = re.support;
        if let Some(p) = im {
            p.validate()?;
            support = (support.0.min(p.support.0), support.1.max(p.support.1));
            parts.push(p);
        }
        let qv = q.value();
        let lo = 0.05 * qv;
        let w_max = (PI / support.1).min(1.0);
        let cap = cfg.sigma_max.unwrap_or(cfg.sigma_cap);
        let block_len = 8.0;

        let mut edges = vec![lo];
        let mut values: Vec<Complex64> = Vec::new();
        let (mut peak, mut quiet, mut tail) = (0.0f64, 0, f64::INFINITY);
        loop {
            let start = *edges.last().unwrap();
            if start >= cap || (cfg.sigma_max.is_none() && quiet >= 2) {
                break;
            }
            if cfg.sigma_max.is_none() && start >= cfg.sigma_cap {
                return Err(CoulombError::Convergence {
                    msg: format!("transform tail not below {:.1e} by σ = {}", cfg.panel_tol, cfg.sigma_cap),
                    achieved: tail,
                });
            }
            let stop = (start + block_len).min(cap);
            let first_new = edges.len() - 1;
            let mut s = start;
            while s < stop {
                let h = w_max.min(0.5 * s).min(stop - s);
                s = if stop - (s + h) < 1e-12 * stop { stop } else { s + h };
                edges.push(s);
            }
            let mut sigmas = Vec::new();
            for p in first_new..edges.len() - 1 {
                let (a, b) = (edges[p], edges[p + 1]);
                let j0 = if p == 0 { 0 } else { 1 };
                for j in j0..=CHEB {
                    sigmas.push(a + (b - a) * cheb_unit(j));
                }
            }
            let vals = transform_block(q, &parts, &sigmas)?;
            let blk_max = vals.iter().fold(0.0f64, |m, v| m.max(v.norm()));
            values.extend(vals);
            peak = peak.max(blk_max);
            tail = blk_max / peak.max(f64::MIN_POSITIVE);
            quiet = if tail <= cfg.panel_tol { quiet + 1 } else { 0 };
        }
        Ok(SpectralTable { charge: qv, edges, values, support, peak, tail })
    }

    /// Lower end of the table.
    pub fn lo(&self) -> f64 {
        self.edges[0]
    }

    /// Upper end of the table.
    pub fn hi(&self) -> f64 {
        *self.edges.last().unwrap()
    }

    /// The tabulation nodes.
    pub fn nodes(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.values.len());
        for p in 0..self.edges.len() - 1 {
            let (a, b) = (self.edges[p], self.edges[p + 1]);
            for j in (if p == 0 { 0 } else { 1 })..=CHEB {
                out.push(a + (b - a) * cheb_unit(j));
            }
        }
        out
    }

    /// Interpolated ĝ(σ).
    pub fn eval(&self, sigma: f64) -> Complex64 {
        let (lo, hi) = (self.lo(), self.hi());
        if !(sigma >= lo && sigma <= hi) {
            return Complex64::new(0.0, 0.0);
        }
        let p = (self.edges.partition_point(|e| *e <= sigma).max(1) - 1).min(self.edges.len() - 2);
        let (a, b) = (self.edges[p], self.edges[p + 1]);
        let x = (sigma - a) / (b - a);
        let vals = &self.values[p * CHEB..=p * CHEB + CHEB];
        let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
        for (j, v) in vals.iter().enumerate() {
            let d = x - cheb_unit(j);
            if d == 0.0 {
                return *v;
            }
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == CHEB {
                w *= 0.5;
            }
            num += v * (w / d);
            den += w / d;
        }
        num / den
    }

    /// σ range where |ĝ(σ)|/σ exceeds `frac` of its maximum over the nodes.
    pub fn significant_range(&self, frac: f64) -> (f64, f64) {
        let nodes = self.nodes();
        let a: Vec<f64> = nodes.iter().zip(&self.values).map(|(s, v)| v.norm() / s).collect();
        let m = a.iter().cloned().fold(0.0, f64::max);
        let first = a.iter().position(|x| *x >= frac * m).unwrap_or(0);
        let last = a.iter().rposition(|x| *x >= frac * m).unwrap_or(nodes.len() - 1);
        (nodes[first], nodes[last])
    }
}
