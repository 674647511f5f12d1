//! Semiclassical (small-σ) description of the basis: the Liouville–Green map,
//! Agmon distances, the oscillatory phase function, leading-order regime
//! approximations with measured errors, and the tunneling bound report.

mod lg;
mod phase;
mod regimes;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenbasis::{e_row, Charge};
use crate::error::{CoulombError, Result};

pub use lg::{
    action_from_turning_point, agmon, agmon_split, eta_of_x, lg_map, lg_potential, lg_potential_with_step,
    x_of_zeta, zeta_star, AgmonDistance, LGMap, POTENTIAL_MARGIN,
};
pub use phase::{phase_zeta, PhaseZeta};
pub use regimes::{
    airy_basis, airy_regime_approx, airy_regime_approx_with, bessel_leading, bessel_regime_approx,
    connection_coeffs, oscillatory_c_plus, oscillatory_c_plus_matched, oscillatory_envelope,
    oscillatory_regime_approx, ConnectionCoeffs, RegimeApprox, AIRY_X_RANGE, BESSEL_X_MAX, MATCH_X, SIGMA_MAX,
};

/// Required decay rate ε₀ in the tunneling bound |e| ≤ e^{−ε₀/σ}·r.
pub const TUNNELING_EPS0: f64 = 0.1;
/// Largest x = σ²r covered by the tunneling bound.
pub const TUNNELING_X_MAX: f64 = 0.5;

/// Result of [`tunneling_bound_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TunnelingReport {
    /// sup of σ·(log|e(σ,r)| − log r) over the admissible grid points.
    pub sup: f64,
    pub argmax_sigma: f64,
    pub argmax_r: f64,
    pub eps0: f64,
    pub pass: bool,
    /// Points with σ²r ≤ 1/2 that entered the supremum.
    pub points: usize,
    /// Grid points outside σ²r ≤ 1/2 (ignored).
    pub skipped: usize,
}

/// Measures sup σ·(log|e| − log r) over σ ∈ `sigma_grid`, r ∈ `r_grid`
/// restricted to σ²r ≤ 1/2; PASS iff the supremum is ≤ −ε₀.
pub fn tunneling_bound_check(sigma_grid: &[f64], r_grid: &[f64]) -> Result<TunnelingReport> {
    if sigma_grid.is_empty() || r_grid.is_empty() {
        return Err(CoulombError::Input("tunneling check needs nonempty grids".into()));
    }
    if let Some(s) = sigma_grid.iter().find(|&&s| !(s > 0.0 && s <= SIGMA_MAX)) {
        return Err(CoulombError::domain("sigma", format!("grid value {s} outside (0, {SIGMA_MAX}]")));
    }
    let mut radii: Vec<f64> = r_grid.to_vec();
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(CoulombError::domain("r", "radii must be > 0"));
    }
    radii.sort_by(f64::total_cmp);
    // Per-σ maxima in grid order, then a sequential reduction (deterministic).
    let rows: Vec<Result<(f64, f64, usize, usize)>> = sigma_grid
        .par_iter()
        .map(|&s| {
            let admissible: Vec<f64> = radii.iter().copied().filter(|r| s * s * r <= TUNNELING_X_MAX).collect();
            let skipped = radii.len() - admissible.len();
            let vals = e_row(Charge::UNIT, s, &admissible)?;
            let mut best = (f64::NEG_INFINITY, f64::NAN);
            for (r, v) in admissible.iter().zip(&vals) {
                let m = s * (v.abs().ln() - r.ln());
                if m > best.0 {
                    best = (m, *r);
                }
            }
            Ok((best.0, best.1, admissible.len(), skipped))
        })
        .collect();
    let mut rep = TunnelingReport {
        sup: f64::NEG_INFINITY,
        argmax_sigma: f64::NAN,
        argmax_r: f64::NAN,
        eps0: TUNNELING_EPS0,
        pass: false,
        points: 0,
        skipped: 0,
    };
    for (s, row) in sigma_grid.iter().zip(rows) {
        let (m, r, n, k) = row?;
        rep.points += n;
        rep.skipped += k;
        if m > rep.sup {
            rep.sup = m;
            rep.argmax_sigma = *s;
            rep.argmax_r = r;
        }
    }
    rep.pass = rep.points > 0 && rep.sup <= -rep.eps0;
    Ok(rep)
}
