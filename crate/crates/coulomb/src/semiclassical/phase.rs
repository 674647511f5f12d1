//! The oscillatory-regime phase ζ_r(σ) = σ^{−1}(2/3)ζ^{3/2}(σ²r) and its
//! σ-derivatives in closed form.

use serde::{Deserialize, Serialize};

use super::lg::action_from_turning_point;
use crate::error::{CoulombError, Result};

/// ζ_r(σ) with its first two σ-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseZeta {
    pub sigma: f64,
    pub r: f64,
    pub value: f64,
    /// ∂σ ζ_r = r√(1 − 1/x) + σ^{−2} arccosh√x,  x = σ²r.
    pub d1: f64,
    /// ∂²σ ζ_r = σ^{−3}[2/√(1 − 1/x) − 2 arccosh√x].
    pub d2: f64,
}

/// ζ_r(σ), ∂σζ_r, ∂²σζ_r for σ²r ≥ 1.
pub fn phase_zeta(sigma: f64, r: f64) -> Result<PhaseZeta> {
    if !(sigma > 0.0) || !sigma.is_finite() || !r.is_finite() {
        return Err(CoulombError::domain("sigma", format!("need sigma > 0 and finite r, got ({sigma}, {r})")));
    }
    let x = sigma * sigma * r;
    if !(x >= 1.0) {
        return Err(CoulombError::domain("r", format!("phase_zeta needs sigma^2 r >= 1, got {x}")));
    }
    let root = (1.0 - 1.0 / x).sqrt();
    let ach = x.sqrt().acosh();
    let value = action_from_turning_point(x) / sigma;
    let d1 = r * root + ach / (sigma * sigma);
    let d2 = if root > 0.0 { (2.0 / root - 2.0 * ach) / sigma.powi(3) } else { f64::INFINITY };
    Ok(PhaseZeta { sigma, r, value, d1, d2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_match_finite_differences() {
        let (s, r) = (0.2, 600.0);
        let h = 1e-5;
        let p = phase_zeta(s, r).unwrap();
        let f = |s: f64| phase_zeta(s, r).unwrap().value;
        let d1 = (f(s + h) - f(s - h)) / (2.0 * h);
        assert!((d1 / p.d1 - 1.0).abs() < 1e-8);
        let g = |s: f64| phase_zeta(s, r).unwrap().d1;
        let d2 = (g(s + h) - g(s - h)) / (2.0 * h);
        assert!((d2 / p.d2 - 1.0).abs() < 1e-7);
    }
}
