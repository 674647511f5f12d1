//! The 3D propagator kernel
//!   K_t(r, s) = (1/(2rs))∫₀^∞ e^{itσ²} e_q(σ, r) e_q(σ, s) dσ,
//! so that [e^{itH}g](r) = ∫K_t(r, s) g(s) s² ds, and the stationary points
//! of its phases.
//!
//! The integral converges only in the oscillatory (Abel) sense. It is
//! evaluated with a Gaussian mollifier e^{−εσ²} for a halving sequence of ε
//! and Richardson-extrapolated to ε = 0; the mollified kernel equals the
//! exact kernel at the complex time t + iε, so the extrapolation is in a
//! smooth parameter. The integrand is split into K^l (χ_c(σ/q)) and K^h
//! (1 − χ_c(σ/q)).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{chi_low, phase_adapted_grid};
use super::QuadratureConfig;
use crate::eigenbasis::{e_row, Charge, DEFAULT_C};
use crate::error::{CoulombError, Result};
use crate::quad::pairwise_sum_c;
use crate::semiclassical::phase_zeta;
use crate::specfun::theta_phase;

/// Kernel values on all pairs of a radial grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    pub t: f64,
    pub radii: Vec<f64>,
    /// Extrapolated K_t(rᵢ, rⱼ), row-major.
    pub values: Vec<Complex64>,
    /// Low-energy part K^l (same layout), from the finest ε level
    /// extrapolation.
    pub low: Vec<Complex64>,
    /// High-energy part K^h.
    pub high: Vec<Complex64>,
    /// Mollifier widths used, decreasing.
    pub eps: Vec<f64>,
    /// Mollified kernels per ε level (row-major per level).
    pub levels: Vec<Vec<Complex64>>,
    /// max |K_ε_last − K_ε_{last−1}| relative to max |K|.
    pub level_change: f64,
    /// max change between the last two extrapolants relative to max |K|
    /// (0 when only one extrapolant exists).
    pub extrapolant_change: f64,
    /// `level_change ≤ 0.1` and `extrapolant_change ≤ 0.03`.
    pub converged: bool,
}

impl KernelMatrix {
    /// K_t(rᵢ, rⱼ).
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.radii.len() + j]
    }

    /// max |K_t|·|t|^{3/2} over the grid with its location.
    pub fn sup_scaled(&self) -> (f64, f64, f64) {
        let n = self.radii.len();
        let mut best = (0.0, 0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let v = self.at(i, j).norm() * self.t.abs().powf(1.5);
                if v > best.0 {
                    best = (v, self.radii[i], self.radii[j]);
                }
            }
        }
        best
    }
}

/// One kernel value with its mollifier diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelEstimate {
    pub t: f64,
    pub r: f64,
    pub s: f64,
    pub value: Complex64,
    pub low: Complex64,
    pub high: Complex64,
    /// Smallest ε used.
    pub mollifier_eps: f64,
    /// True when the ε-extrapolation met the convergence criteria.
    pub extrapolated: bool,
}

/// Mollified kernels on all pairs of `radii` (positive, strictly
/// increasing), extrapolated in ε.
///
/// The first ε is min(cfg.mollifier_eps, 0.1·(t/r_max)²) so that the damping
/// e^{−εσ*²} at the largest stationary point σ* = r_max/t stays close to 1.
pub fn kernel_matrix(q: Charge, t: f64, radii: &[f64], cfg: &QuadratureConfig) -> Result<KernelMatrix> {
    if !(t.abs() >= 1.0) || !t.is_finite() {
        return Err(CoulombError::domain("t", format!("need |t| >= 1, got {t}")));
    }
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoulombError::Input("kernel radii must be positive and strictly increasing".into()));
    }
    let n = radii.len();
    let r_max = radii[n - 1];
    let at = t.abs();
    let levels = cfg.mollifier_levels.max(2);
    let eps0 = cfg.mollifier_eps.min(0.1 * (at / r_max).powi(2));
    let eps: Vec<f64> = (0..levels).map(|l| eps0 / (1u64 << l) as f64).collect();
    let sigma_end = (36.0 / eps[levels - 1]).sqrt();
    let qv = q.value();
    let omega = |s: f64| 2.0 * at * s + 2.0 * r_max;
    let (sn, sw) = phase_adapted_grid(0.05 * qv, sigma_end, omega, cfg.nodes_per_period, cfg.max_sigma_nodes)?;

    // Upper-triangle pairs.
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let np = pairs.len();
    let chunk = sn.len().div_ceil(256).max(1);
    // Per chunk: [level][part][pair], part 0 = low, 1 = high.
    let partials: Vec<Vec<Complex64>> = sn
        .par_chunks(chunk)
        .zip(sw.par_chunks(chunk))
        .map(|(ns, ws)| -> Result<Vec<Complex64>> {
            let mut acc = vec![Complex64::new(0.0, 0.0); levels * 2 * np];
            let mut prod = vec![0.0; np];
            for (&s, &w) in ns.iter().zip(ws) {
                let row = e_row(q, s, radii)?;
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    prod[p] = row[i] * row[j];
                }
                let base = Complex64::from_polar(0.5 * w, t * s * s);
                let chi = chi_low(s / qv, cfg.c, cfg.cutoff_order);
                for (l, e) in eps.iter().enumerate() {
                    let m = base * (-e * s * s).exp();
                    for (part, weight) in [(0usize, chi), (1usize, 1.0 - chi)] {
                        if weight == 0.0 {
                            continue;
                        }
                        let c = m * weight;
                        let dst = &mut acc[(l * 2 + part) * np..(l * 2 + part + 1) * np];
                        for (d, p) in dst.iter_mut().zip(&prod) {
                            *d += c * p;
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = levels * 2 * np;
    let sums: Vec<Complex64> = (0..total)
        .map(|k| {
            let col: Vec<Complex64> = partials.iter().map(|p| p[k]).collect();
            pairwise_sum_c(&col)
        })
        .collect();

    let expand = |flat: &dyn Fn(usize) -> Complex64| -> Vec<Complex64> {
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let v = flat(p) / (radii[i] * radii[j]);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
        m
    };
    let part = |l: usize, k: usize, p: usize| sums[(l * 2 + k) * np + p];
    let level_vals: Vec<Vec<Complex64>> = (0..levels).map(|l| expand(&|p| part(l, 0, p) + part(l, 1, p))).collect();
    // Richardson: K_ε = K + O(ε), so 2K_{ε/2} − K_ε removes the linear term.
    let rich = |l: usize, k: usize, p: usize| 2.0 * part(l + 1, k, p) - part(l, k, p);
    let last = levels - 2;
    let low = expand(&|p| rich(last, 0, p));
    let high = expand(&|p| rich(last, 1, p));
    let values: Vec<Complex64> = low.iter().zip(&high).map(|(a, b)| a + b).collect();
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let diff = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale;
    let level_change = diff(&level_vals[levels - 1], &level_vals[levels - 2]);
    let extrapolant_change = if levels >= 3 {
        let prev = expand(&|p| rich(last - 1, 0, p) + rich(last - 1, 1, p));
        diff(&values, &prev)
    } else {
        0.0
    };
    Ok(KernelMatrix {
        t,
        radii: radii.to_vec(),
        values,
        low,
        high,
        eps,
        levels: level_vals,
        level_change,
        extrapolant_change,
        converged: level_change <= 0.1 && extrapolant_change <= 0.03,
    })
}

/// K_t(r, s) for a single pair.
pub fn kernel_estimate(q: Charge, t: f64, r: f64, s: f64, cfg: &QuadratureConfig) -> Result<KernelEstimate> {
    let (lo, hi) = (r.min(s), r.max(s));
    let radii = if lo == hi { vec![lo] } else { vec![lo, hi] };
    let m = kernel_matrix(q, t, &radii, cfg)?;
    let (i, j) = if lo == hi { (0, 0) } else if r <= s { (0, 1) } else { (1, 0) };
    let k = i * radii.len() + j;
    Ok(KernelEstimate {
        t,
        r,
        s,
        value: m.values[k],
        low: m.low[k],
        high: m.high[k],
        mollifier_eps: *m.eps.last().unwrap(),
        extrapolated: m.converged,
    })
}

/// Sign in Φ^∓(σ) = σ² ∓ t^{−1}·phase(σ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseBranch {
    Minus,
    Plus,
}

/// phase = phase_r − phase_s (r ≥ s) or phase_r + phase_s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhasePairing {
    Difference,
    Sum,
}

/// σ-derivative of the single-radius phase at unit charge: ζ_r′(σ) in the
/// low regime σ ≤ c (0 in the classically forbidden zone σ²r < 1), and
/// Θ′(σ, r) = r + (ln(2σ) + ½ln r − ½)/σ² + (θ′(σ) − ln(2σ)/(2σ²)) above.
pub fn phase_derivative(sigma: f64, r: f64, c: f64) -> Result<f64> {
    if sigma <= c {
        if sigma * sigma * r < 1.0 {
            return Ok(0.0);
        }
        return Ok(phase_zeta(sigma, r)?.d1);
    }
    // Θ(σ, r) = σr − ln(2σr)/(2σ) + θ(σ); θ′ by a central difference.
    let h = 1e-4 * sigma;
    let dtheta = (theta_phase(sigma + h)? - theta_phase(sigma - h)?) / (2.0 * h);
    Ok(r - (1.0 - (2.0 * sigma * r).ln()) / (2.0 * sigma * sigma) + dtheta)
}

fn pair_derivative(sigma: f64, r: f64, s: f64, pairing: PhasePairing) -> Result<f64> {
    let (a, b) = (phase_derivative(sigma, r, DEFAULT_C)?, phase_derivative(sigma, s, DEFAULT_C)?);
    Ok(match pairing {
        PhasePairing::Difference => a - b,
        PhasePairing::Sum => a + b,
    })
}

/// Stationary point of Φ^∓(σ) = σ² ∓ t^{−1}·phase(σ; r, s) on (0, ∞), with
/// phase = ζ_r ± ζ_s for σ ≤ c and Θ_r ± Θ_s above (unit charge, c = 0.35).
///
/// The derivative is scanned on a geometric grid for a sign change; the
/// bracket is refined by Newton steps safeguarded with bisection. All roots
/// are returned in increasing order; the list is empty when the derivative
/// has one sign (always the case on the `Plus` branch, whose derivative is
/// 2σ + phase′/t > 0).
pub fn stationary_points(t: f64, r: f64, s: f64, branch: PhaseBranch, pairing: PhasePairing) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(t >= 1.0) || !(r > 0.0) || !(s > 0.0) {
        return roots;
    }
    let (r, s) = (r.max(s), r.min(s));
    let sign = match branch {
        PhaseBranch::Minus => -1.0,
        PhaseBranch::Plus => 1.0,
    };
    let g = |x: f64| -> Option<f64> { Some(2.0 * x + sign * pair_derivative(x, r, s, pairing).ok()? / t) };
    let (lo, hi) = (1e-3, (r + s) / t + 10.0);
    let steps = 400;
    let mut a = lo;
    let Some(mut ga) = g(a) else { return roots };
    for k in 1..=steps {
        let b = lo * (hi / lo).powf(k as f64 / steps as f64);
        let Some(gb) = g(b) else { return roots };
        if ga.signum() != gb.signum() {
            if let Some(x) = refine(&g, a, b, ga) {
                let scale = 2.0 * x + pair_derivative(x, r, s, pairing).map_or(0.0, f64::abs) / t;
                // Reject sign changes caused by the regime switch at σ = c.
                if g(x).is_some_and(|v| v.abs() <= 1e-8 * scale) {
                    roots.push(x);
                }
            }
        }
        a = b;
        ga = gb;
    }
    roots
}

/// Newton steps safeguarded by bisection on a bracket [a, b] of g.
fn refine(g: &dyn Fn(f64) -> Option<f64>, a: f64, b: f64, ga: f64) -> Option<f64> {
    let (mut x0, mut x1, mut g0) = (a, b, ga);
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let gx = g(x)?;
        if gx == 0.0 {
            break;
        }
        if gx.signum() == g0.signum() {
            x0 = x;
            g0 = gx;
        } else {
            x1 = x;
        }
        let h = 1e-7 * x;
        let d = (g(x + h)? - g(x - h)?) / (2.0 * h);
        let newton = x - gx / d;
        x = if d.is_finite() && newton > x0 && newton < x1 { newton } else { 0.5 * (x0 + x1) };
        if (x1 - x0) < 1e-15 * x1 {
            break;
        }
    }
    Some(x)
}

/// The largest stationary point of Φ^∓ (see [`stationary_points`]).
pub fn stationary_point(t: f64, r: f64, s: f64, branch: PhaseBranch, pairing: PhasePairing) -> Option<f64> {
    stationary_points(t, r, s, branch, pairing).last().copied()
}

/// Stationary point of Φ^∓ for the phase difference ζ_r − ζ_s (Θ_r − Θ_s at
/// high energy); when both regimes have one, the high-energy root
/// σ* ≈ (r − s)/(2t) is returned.
pub fn stationary_point_locator(t: f64, r: f64, s: f64, branch: PhaseBranch) -> Option<f64> {
    stationary_point(t, r, s, branch, PhasePairing::Difference)
}
