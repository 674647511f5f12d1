//! Leading-order semiclassical approximations of e(σ, r) in the Bessel,
//! Airy and oscillatory regimes, their connection coefficients, and the
//! measured error against the reference evaluator.
//!
//! Positions are given in the semiclassical variable x = σ²r (turning point
//! at x = 1) except for the oscillatory regime, which takes r directly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lg::{eta_of_x, lg_map};
use crate::eigenbasis::{e_basis, log_expm1, Charge};
use crate::error::{CoulombError, Result};
use crate::specfun::{airy_pair, bessel_scaled, theta_phase, theta_phase_stirling};

/// Largest σ for which the semiclassical formulas are exercised.
pub const SIGMA_MAX: f64 = 0.2;
/// Right end δ_b of the Bessel regime in x.
pub const BESSEL_X_MAX: f64 = 0.8;
/// Airy regime window in x.
pub const AIRY_X_RANGE: (f64, f64) = (0.5, 1.2);
/// Default Wronskian-matching point for the Airy connection coefficients.
pub const MATCH_X: f64 = 0.5;

/// A leading-order approximation together with the reference value and the
/// measured relative error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeApprox {
    pub approx: f64,
    pub reference: f64,
    /// |approx − reference| relative to |reference| (Bessel, Airy) or to the
    /// local envelope (2/√π)(q̃ζ)^{−1/4} (oscillatory, where e has zeros).
    pub measured_rel_err: f64,
}

/// Connection coefficients between e and the Airy-type LG bases.
///
/// e ≈ q̃^{−1/4}[A·Ai(τ) + B·Bi(τ)] near the turning point and
/// e ≈ c₊ψ₊ + c₋ψ₋, ψ± = q̃^{−1/4}(Ai ± iBi)(τ), beyond it, τ = −σ^{−2/3}ζ.
/// The error factors are measured against the leading forms A = 2σ^{−1/6} and
/// c± = σ^{−1/6}. B is reported on the scale σ^{5/6}e^{−(π/2−1)/σ}; the matched
/// value is O(σ) on that scale, i.e. B vanishes at leading order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionCoeffs {
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    pub c_plus: Complex64,
    pub c_minus: Complex64,
    pub e1: f64,
    /// B / (σ^{5/6}e^{−(π/2−1)/σ}).
    pub b_ratio: f64,
    pub e3: f64,
    pub e4: f64,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma <= SIGMA_MAX {
        Ok(())
    } else {
        Err(CoulombError::domain("sigma", format!("semiclassical regime needs 0 < sigma <= {SIGMA_MAX}, got {sigma}")))
    }
}

/// Reference (e, ∂ₓe) at x = σ²r.
fn reference(sigma: f64, x: f64) -> Result<(f64, f64)> {
    let ev = e_basis(Charge::UNIT, sigma, x / (sigma * sigma), 1e-13)?;
    let d = ev
        .d_r
        .ok_or_else(|| CoulombError::Regime(format!("no r-derivative available at sigma = {sigma}, x = {x}")))?;
    Ok((ev.value, d / (sigma * sigma)))
}

/// First derivative by a 5-point stencil with one Richardson step.
fn deriv<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> {
        Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
    };
    let (d1, d2) = (d(h)?, d(0.5 * h)?);
    Ok((16.0 * d2 - d1) / 15.0)
}

/// Leading-order Bessel-regime formula
/// e(σ, x/σ²) ≈ √2 σ^{−1/2}[e^{π/σ} − 1]^{−1/2}(η/η′)^{1/2} I₁(η/σ), η′ = √(1/x − 1).
pub fn bessel_leading(sigma: f64, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(CoulombError::domain("x", format!("Bessel form needs 0 < x < 1, got {x}")));
    }
    let eta = eta_of_x(x);
    let deta = (1.0 / x - 1.0).sqrt();
    let y = eta / sigma;
    let i1s = bessel_scaled(y)?.i1;
    let log = 0.5 * std::f64::consts::LN_2 - 0.5 * sigma.ln() - 0.5 * log_expm1(PI / sigma) + 0.5 * (eta / deta).ln() + y;
    Ok(log.exp() * i1s)
}

/// Bessel regime: σ ∈ (0, 0.2], x ∈ (0, 0.8].
pub fn bessel_regime_approx(sigma: f64, x: f64) -> Result<RegimeApprox> {
    check_sigma(sigma)?;
    if !(x > 0.0 && x <= BESSEL_X_MAX) {
        return Err(CoulombError::domain("x", format!("Bessel regime is 0 < x <= {BESSEL_X_MAX}, got {x}")));
    }
    let approx = bessel_leading(sigma, x)?;
    let (reference, _) = reference(sigma, x)?;
    Ok(RegimeApprox { approx, reference, measured_rel_err: ((approx - reference) / reference).abs() })
}

/// The Airy-type LG pair q̃^{−1/4}Ai(τ), q̃^{−1/4}Bi(τ) at x.
pub fn airy_basis(sigma: f64, x: f64) -> Result<(f64, f64)> {
    let m = lg_map(x)?;
    let tau = -m.zeta * sigma.powf(-2.0 / 3.0);
    let p = airy_pair(tau)?;
    let w = m.lg_factor.powf(-0.25);
    Ok((w * p.ai, w * p.bi))
}

/// A and B by Wronskian matching against the reference at `x_match`, with
/// c± from the exact large-r phase.
pub fn connection_coeffs(sigma: f64, x_match: f64) -> Result<ConnectionCoeffs> {
    check_sigma(sigma)?;
    let h = 1e-4 * x_match;
    let (e, de) = reference(sigma, x_match)?;
    let (p1, p2) = airy_basis(sigma, x_match)?;
    let dp1 = deriv(|x| Ok(airy_basis(sigma, x)?.0), x_match, h)?;
    let dp2 = deriv(|x| Ok(airy_basis(sigma, x)?.1), x_match, h)?;
    let w12 = p1 * dp2 - dp1 * p2;
    let a = (e * dp2 - de * p2) / w12;
    let b = (p1 * de - dp1 * e) / w12;
    let c_plus = oscillatory_c_plus(sigma)?;
    let s16 = sigma.powf(1.0 / 6.0);
    let b_scale = sigma.powf(5.0 / 6.0) * (-(FRAC_PI_2 - 1.0) / sigma).exp();
    Ok(ConnectionCoeffs {
        sigma,
        a,
        b,
        c_plus,
        c_minus: c_plus.conj(),
        e1: a * s16 / 2.0 - 1.0,
        b_ratio: b / b_scale,
        e3: (c_plus.conj() * s16 - 1.0).norm(),
        e4: (c_plus * s16 - 1.0).norm(),
    })
}

/// Airy regime at leading order: e ≈ 2σ^{−1/6}·q̃^{−1/4}Ai(τ), x ∈ [0.5, 1.2].
///
/// The Bi coefficient is dropped: it is exponentially small and, once
/// matched, one order in σ below its natural scale (see [`ConnectionCoeffs`]).
pub fn airy_regime_approx(sigma: f64, x: f64) -> Result<RegimeApprox> {
    check_sigma(sigma)?;
    check_airy_x(x)?;
    let (p1, _) = airy_basis(sigma, x)?;
    let approx = 2.0 * sigma.powf(-1.0 / 6.0) * p1;
    let (reference, _) = reference(sigma, x)?;
    Ok(RegimeApprox { approx, reference, measured_rel_err: ((approx - reference) / reference).abs() })
}

/// Airy regime with given (e.g. Wronskian-matched) connection coefficients.
pub fn airy_regime_approx_with(cc: &ConnectionCoeffs, x: f64) -> Result<RegimeApprox> {
    check_airy_x(x)?;
    let (p1, p2) = airy_basis(cc.sigma, x)?;
    let approx = cc.a * p1 + cc.b * p2;
    let (reference, _) = reference(cc.sigma, x)?;
    Ok(RegimeApprox { approx, reference, measured_rel_err: ((approx - reference) / reference).abs() })
}

fn check_airy_x(x: f64) -> Result<()> {
    let (lo, hi) = AIRY_X_RANGE;
    if x >= lo && x <= hi {
        Ok(())
    } else {
        Err(CoulombError::domain("x", format!("Airy regime is {lo} <= x <= {hi}, got {x}")))
    }
}

/// c₊ from the exact large-r phase: c₊ = σ^{−1/6}e^{iα}, α = θ_S(σ) − θ(σ),
/// θ_S the Stirling head −log(2σ)/(2σ) − 1/(2σ) + π/4 (so α = σ/6 + O(σ³)).
pub fn oscillatory_c_plus(sigma: f64) -> Result<Complex64> {
    let head = theta_phase_stirling(sigma) + sigma / 6.0;
    let alpha = head - theta_phase(sigma)?;
    Ok(Complex64::from_polar(sigma.powf(-1.0 / 6.0), alpha))
}

/// c₊ by Wronskian matching against the reference at x (> 1), using the
/// exact Airy functions in ψ±.
pub fn oscillatory_c_plus_matched(sigma: f64, x: f64) -> Result<Complex64> {
    check_sigma(sigma)?;
    if !(x > 1.0) {
        return Err(CoulombError::domain("x", format!("oscillatory matching needs x > 1, got {x}")));
    }
    let h = 1e-4 * x;
    let psi = |x: f64| -> Result<Complex64> {
        let (a, b) = airy_basis(sigma, x)?;
        Ok(Complex64::new(a, b))
    };
    let (e, de) = reference(sigma, x)?;
    let p = psi(x)?;
    let dre = deriv(|y| Ok(psi(y)?.re), x, h)?;
    let dim = deriv(|y| Ok(psi(y)?.im), x, h)?;
    let dp = Complex64::new(dre, dim);
    let (pm, dpm) = (p.conj(), dp.conj());
    let w = p * dpm - dp * pm;
    Ok((e * dpm - de * pm) / w)
}

/// Local envelope (2/√π)(q̃ζ)^{−1/4} of the oscillatory leading form.
pub fn oscillatory_envelope(x: f64) -> Result<f64> {
    let m = lg_map(x)?;
    Ok(2.0 / PI.sqrt() * (m.lg_factor * m.zeta).powf(-0.25))
}

/// Oscillatory regime (σ²r > 1): the leading form
/// 2Re(c₊ q̃^{−1/4} π^{−1/2} z^{−1/4} e^{−i(ζ_r − π/4)}), z = σ^{−2/3}ζ, ζ_r = (2/3)z^{3/2},
/// i.e. the large-argument Airy asymptotics with the correction terms dropped.
pub fn oscillatory_regime_approx(sigma: f64, r: f64) -> Result<RegimeApprox> {
    check_sigma(sigma)?;
    let x = sigma * sigma * r;
    if !(x > 1.0) || !x.is_finite() {
        return Err(CoulombError::domain("r", format!("oscillatory regime needs sigma^2 r > 1, got {x}")));
    }
    let c = oscillatory_c_plus(sigma)?;
    let approx = oscillatory_leading(sigma, x, c)?;
    let reference = e_basis(Charge::UNIT, sigma, r, 1e-13)?.value;
    let env = oscillatory_envelope(x)?;
    Ok(RegimeApprox { approx, reference, measured_rel_err: (approx - reference).abs() / env })
}

fn oscillatory_leading(sigma: f64, x: f64, c_plus: Complex64) -> Result<f64> {
    let m = lg_map(x)?;
    let zeta_r = super::lg::action_from_turning_point(x) / sigma;
    let amp = m.lg_factor.powf(-0.25) / PI.sqrt() * sigma.powf(1.0 / 6.0) * m.zeta.powf(-0.25);
    Ok(2.0 * (c_plus * Complex64::from_polar(amp, -(zeta_r - FRAC_PI_4))).re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_wronskian_of_lg_pair_is_constant_in_zeta() {
        // W_x[φ₁, φ₂] = (dτ/dx)·q̃^{−1/2}/π = −σ^{−2/3}/π for the LG-weighted pair.
        let s = 0.1;
        for x in [0.6, 0.9, 1.1] {
            let h = 1e-4 * x;
            let (p1, p2) = airy_basis(s, x).unwrap();
            let d1 = deriv(|y| Ok(airy_basis(s, y)?.0), x, h).unwrap();
            let d2 = deriv(|y| Ok(airy_basis(s, y)?.1), x, h).unwrap();
            let w = p1 * d2 - d1 * p2;
            assert!((w / (-s.powf(-2.0 / 3.0) / PI) - 1.0).abs() < 1e-8, "x = {x}: {w}");
        }
    }

    #[test]
    fn c_plus_phase_is_small() {
        let c = oscillatory_c_plus(0.05).unwrap();
        assert!((c.arg() - 0.05 / 6.0).abs() < 1e-4);
    }
}
