//! Dispatching evaluator of the normalized basis e(σ, r), the reference
//! evaluator φ, the spectral density and the large-r phase Θ.
//!
//! Internally everything runs at unit charge; a charge q enters through the
//! exact rescaling e_q(σ, r) = e₁(σ/q, q·r), which preserves the
//! normalization ½∫ e_q(σ,r) e_q(σ,r′) dσ = δ(r − r′).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::asymptotic::{e_asymptotic, e_asymptotic_value};
use super::ode::{regular_at, regular_dense};
use super::{Charge, EigenEval, Regime, SpectralDensity};
use crate::error::{CoulombError, Result};
use crate::specfun::{kummer_laplace_split, kummer_m_series, theta_phase, SplitOptions};

/// Default low/high energy threshold c.
pub const DEFAULT_C: f64 = 0.35;
/// Default near/far threshold k on σr.
pub const DEFAULT_K: f64 = 40.0;
/// ln of the smallest positive normal `f64`, below which values flush to 0.
const LOG_FLOOR: f64 = -708.0;

/// Regime thresholds of [`e_basis_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub c: f64,
    pub k: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { c: DEFAULT_C, k: DEFAULT_K }
    }
}

/// ln(eˣ − 1) without overflow.
pub fn log_expm1(x: f64) -> f64 {
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// ln μ(σ) at unit charge, μ² = σ/(e^{π/σ} − 1).
pub fn log_mu(sigma: f64) -> f64 {
    0.5 * (sigma.ln() - log_expm1(PI / sigma))
}

/// Reference value of φ(σ, r) with its r-derivative.
///
/// When the solution exceeds the `f64` range the mantissas are returned with
/// `scaled = true`; true values are `phi·e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiReference {
    pub phi: f64,
    pub dphi_dr: f64,
    pub log_scale: f64,
    pub scaled: bool,
}

/// φ(σ, r) at unit charge: the regular solution of −f″ + f/r = σ²f with
/// f(0) = 0, f′(0) = 1, from a Frobenius seed followed by adaptive Taylor
/// marching (per-step truncation below 1e−17 relative).
pub fn phi_reference(sigma: f64, r: f64, tol: f64) -> Result<PhiReference> {
    check_positive("sigma", sigma)?;
    check_positive("r", r)?;
    if !(tol > 0.0) {
        return Err(CoulombError::domain("tol", format!("must be > 0, got {tol}")));
    }
    let st = regular_at(sigma * sigma, r)?;
    if st.log_scale.abs() < 600.0 {
        let g = st.log_scale.exp();
        return Ok(PhiReference { phi: st.y * g, dphi_dr: st.dy * g, log_scale: 0.0, scaled: false });
    }
    Ok(PhiReference { phi: st.y, dphi_dr: st.dy, log_scale: st.log_scale, scaled: true })
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CoulombError::domain(name, format!("must be > 0 and finite, got {v}")))
    }
}

/// e(σ, r) for charge q with the default regime thresholds.
pub fn e_basis(q: Charge, sigma: f64, r: f64, tol: f64) -> Result<EigenEval> {
    e_basis_with(q, sigma, r, tol, Thresholds::default())
}

/// e(σ, r) for charge q, dispatching on the (rescaled) regime:
/// * σ ≥ c, σr > k: contour decomposition of the Kummer integral;
/// * σ ≥ c, σr ≤ k: Kummer power series (ODE march if its cancellation guard trips);
/// * σ < c: large-r asymptotic series where it converges, ODE march otherwise.
pub fn e_basis_with(q: Charge, sigma: f64, r: f64, tol: f64, th: Thresholds) -> Result<EigenEval> {
    check_positive("sigma", sigma)?;
    check_positive("r", r)?;
    if !(tol > 0.0) {
        return Err(CoulombError::domain("tol", format!("must be > 0, got {tol}")));
    }
    let qv = q.value();
    let s = sigma / qv;
    let x = qv * r;
    let mut ev = e_unit(s, x, tol, th)?;
    ev.d_r = ev.d_r.map(|d| d * qv);
    Ok(ev)
}

/// Unit-charge evaluation.
fn e_unit(s: f64, x: f64, tol: f64, th: Thresholds) -> Result<EigenEval> {
    let rho = s * x;
    if s >= th.c && rho > th.k {
        return contour(s, x, tol);
    }
    if s >= th.c {
        let eta = 0.5 / s;
        let z = Complex64::new(0.0, 2.0 * rho);
        let a = Complex64::new(1.0, -eta);
        let m = kummer_m_series(a, Complex64::new(2.0, 0.0), z, tol.min(1e-14));
        let mp = kummer_m_series(a + 1.0, Complex64::new(3.0, 0.0), z, tol.min(1e-14));
        if let (Ok(m), Ok(mp)) = (m, mp) {
            let ph = Complex64::from_polar(1.0, -rho);
            let mu2 = 2.0 * log_mu(s).exp();
            // φ = r e^{−iσr} M,  φ′ = e^{−iσr}[(1 − iσr)M + r·2iσ·(a/2)M(a+1,3,z)]
            let phi = ph * m * x;
            let dphi = ph * ((1.0 - Complex64::i() * rho) * m + x * Complex64::new(0.0, 2.0 * s) * 0.5 * a * mp);
            return Ok(EigenEval {
                value: mu2 * phi.re,
                d_sigma: None,
                d_r: Some(mu2 * dphi.re),
                regime: Regime::LargeSigmaSeries,
                err_est: tol.min(1e-14).max(phi.im.abs()) * mu2 * phi.norm().max(1.0),
                underflow: false,
            });
        }
    } else if rho > 1.0 {
        let theta = theta_phase(s)?;
        if let Some((v, d)) = e_asymptotic(s, x, theta, tol.min(1e-15)) {
            return Ok(EigenEval {
                value: v,
                d_sigma: None,
                d_r: Some(d),
                regime: Regime::Oscillatory,
                err_est: 1e-15 + tol.min(1e-15),
                underflow: false,
            });
        }
    }
    ode(s, x)
}

fn contour(s: f64, x: f64, tol: f64) -> Result<EigenEval> {
    let opts = SplitOptions { c: 0.0, k: 0.0, tol: tol.clamp(1e-14, 1e-10) };
    let split = kummer_laplace_split(s, x, opts)?;
    let i_total = split.total(s, x);
    let ph = Complex64::from_polar(1.0, -s * x);
    // e = 2μ·r·Re(e^{−iσr} I)·sinh(πη)/(πη) = (2σ^{3/2}/π)·√(1 − e^{−π/σ})·r·Re(e^{−iσr} I).
    let pref = 2.0 * s.powf(1.5) / PI * (-(-PI / s).exp_m1()).sqrt() * x;
    let w = ph * i_total;
    Ok(EigenEval {
        value: pref * w.re,
        d_sigma: None,
        d_r: None,
        regime: Regime::LargeSigmaContour,
        err_est: pref * (split.err + w.im.abs()),
        underflow: false,
    })
}

fn ode(s: f64, x: f64) -> Result<EigenEval> {
    let st = regular_at(s * s, x)?;
    let lm = std::f64::consts::LN_2 + log_mu(s) + st.log_scale;
    let ly = lm + st.y.abs().ln();
    if ly < LOG_FLOOR || !lm.is_finite() {
        return Ok(EigenEval {
            value: 0.0,
            d_sigma: None,
            d_r: Some(0.0),
            regime: Regime::FrobeniusOde,
            err_est: LOG_FLOOR.exp(),
            underflow: true,
        });
    }
    let g = lm.exp();
    let value = st.y * g;
    Ok(EigenEval {
        value,
        d_sigma: None,
        d_r: Some(st.dy * g),
        regime: Regime::FrobeniusOde,
        err_est: 1e-13 * value.abs().max(g * st.dy.abs() * x),
        underflow: false,
    })
}

/// e(σ, rᵢ) for increasing radii at a single σ (charge q): one ODE march with
/// dense output, switching to the asymptotic series once it converges.
pub fn e_row(q: Charge, sigma: f64, radii: &[f64]) -> Result<Vec<f64>> {
    check_positive("sigma", sigma)?;
    if radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(CoulombError::Input("radii must be nondecreasing".into()));
    }
    let qv = q.value();
    let s = sigma / qv;
    let xs: Vec<f64> = radii.iter().map(|r| r * qv).collect();
    let theta = theta_phase(s)?;
    let tol = 1e-15;
    let valid = |x: f64| s * x > 1.0 && e_asymptotic_value(s, x, theta, tol).is_some();
    // First index from which the asymptotic series is used (validity is
    // monotone in r).
    let n = xs.len();
    let split = if n == 0 || !valid(xs[n - 1]) {
        n
    } else {
        let (mut lo, mut hi) = (0usize, n - 1);
        if valid(xs[0]) {
            hi = 0;
        }
        while lo < hi {
            let mid = (lo + hi) / 2;
            if valid(xs[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        hi
    };
    let mut out = vec![0.0; n];
    let lm = std::f64::consts::LN_2 + log_mu(s);
    if lm.is_finite() && split > 0 {
        regular_dense(s * s, &xs[..split], |i, y, _, ls| {
            let l = lm + ls;
            out[i] = if l + y.abs().ln() < LOG_FLOOR { 0.0 } else { y * l.exp() };
        })?;
    }
    for i in split..n {
        out[i] = e_asymptotic_value(s, xs[i], theta, tol).unwrap_or(0.0);
    }
    Ok(out)
}

/// Spectral density ρ′(σ) = 2qσ/(e^{qπ/σ} − 1).
pub fn spectral_density(q: Charge, sigma: f64) -> SpectralDensity {
    let qv = q.value();
    let density = if sigma > 0.0 { 2.0 * qv * sigma / (qv * PI / sigma).exp_m1() } else { 0.0 };
    SpectralDensity { sigma, density }
}

/// Θ(σ, r) = σr − log(2σr)/(2σ) + θ(σ).
pub fn theta_big(sigma: f64, r: f64) -> Result<f64> {
    check_positive("sigma", sigma)?;
    if !(sigma * r > 0.0) {
        return Err(CoulombError::domain("r", format!("sigma*r must be > 0, got {}", sigma * r)));
    }
    Ok(sigma * r - (2.0 * sigma * r).ln() / (2.0 * sigma) + theta_phase(sigma)?)
}
