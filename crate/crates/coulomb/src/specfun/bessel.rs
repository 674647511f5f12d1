//! Modified Bessel functions I₀, I₁, K₀, K₁ for real x > 0.
//!
//! I_ν: power series (all terms positive) for x ≤ 20, Hankel expansion beyond.
//! K_ν: logarithmic series for x ≤ 1, otherwise the integral
//! K_ν(x) e^{x} = ∫₀^∞ e^{−x(cosh t − 1)} cosh(νt) dt by the trapezoidal rule,
//! which converges geometrically for this entire, rapidly decaying integrand.

use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// I₁, K₁ and their derivatives. When `scaled` is true the I-values carry a
/// factor e^{−x} and the K-values a factor e^{x}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselI1K1 {
    pub i1: f64,
    pub k1: f64,
    pub di1: f64,
    pub dk1: f64,
    pub scaled: bool,
}

/// Exponentially scaled values e^{−x}I₀, e^{−x}I₁, e^{x}K₀, e^{x}K₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselScaled {
    pub i0: f64,
    pub i1: f64,
    pub k0: f64,
    pub k1: f64,
}

/// I₁(x), K₁(x) and derivatives; switches to the scaled representation
/// (flagged) when e^{x} would overflow.
pub fn bessel_i1_k1(x: f64) -> Result<BesselI1K1> {
    let s = bessel_scaled(x)?;
    let di1 = s.i0 - s.i1 / x;
    let dk1 = -s.k0 - s.k1 / x;
    if x > 700.0 {
        return Ok(BesselI1K1 { i1: s.i1, k1: s.k1, di1, dk1, scaled: true });
    }
    let g = x.exp();
    let d = (-x).exp();
    Ok(BesselI1K1 { i1: s.i1 * g, k1: s.k1 * d, di1: di1 * g, dk1: dk1 * d, scaled: false })
}

/// Scaled I₀, I₁, K₀, K₁ at x > 0.
pub fn bessel_scaled(x: f64) -> Result<BesselScaled> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(CoulombError::domain("x", format!("modified Bessel functions need x > 0, got {x}")));
    }
    let (i0, i1) = if x <= 20.0 {
        let (a, b) = i_series(x);
        let d = (-x).exp();
        (a * d, b * d)
    } else {
        (i_hankel(0.0, x), i_hankel(1.0, x))
    };
    let (k0, k1) = if x <= 1.0 {
        let (a, b) = k_series(x);
        let g = x.exp();
        (a * g, b * g)
    } else {
        k_integral(x)
    };
    Ok(BesselScaled { i0, i1, k0, k1 })
}

/// Unscaled I₀ and I₁ from their power series.
fn i_series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let mut t0 = 1.0;
    let mut t1 = 0.5 * x;
    let mut s0 = t0;
    let mut s1 = t1;
    for k in 1..500 {
        let kf = k as f64;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        s0 += t0;
        s1 += t1;
        if t0 < 1e-18 * s0 && t1 < 1e-18 * s1 {
            break;
        }
    }
    (s0, s1)
}

/// e^{−x} I_ν(x) from the Hankel expansion (x > 20).
fn i_hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let next = -term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// Unscaled K₀ and K₁ from the logarithmic series (x ≤ 1).
fn k_series(x: f64) -> (f64, f64) {
    let (i0, i1) = i_series(x);
    let y = 0.25 * x * x;
    let l = (0.5 * x).ln();
    // K₀ = −(ln(x/2)+γ) I₀ + Σ_{k≥1} H_k y^k/(k!)²
    let mut k0 = -(l + EULER_GAMMA) * i0;
    let mut t = 1.0;
    let mut h = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        t *= y / (kf * kf);
        h += 1.0 / kf;
        k0 += h * t;
        if t * h < 1e-18 * k0.abs() {
            break;
        }
    }
    // K₁ = 1/x + ln(x/2) I₁ − (x/4) Σ_{k≥0} (ψ(k+1)+ψ(k+2)) y^k/(k!(k+1)!)
    let mut psi1 = -EULER_GAMMA; // ψ(k+1)
    let mut psi2 = 1.0 - EULER_GAMMA; // ψ(k+2)
    let mut t = 1.0;
    let mut sum = psi1 + psi2;
    for k in 1..200 {
        let kf = k as f64;
        t *= y / (kf * (kf + 1.0));
        psi1 += 1.0 / kf;
        psi2 += 1.0 / (kf + 1.0);
        let term = t * (psi1 + psi2);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    let k1 = 1.0 / x + l * i1 - 0.25 * x * sum;
    (k0, k1)
}

/// Scaled K₀, K₁ from the trapezoidal rule on the cosh integral (x > 1).
fn k_integral(x: f64) -> (f64, f64) {
    let h = 0.2 * (1.0f64).min(1.0 / x.sqrt());
    let mut s0 = 0.5; // t = 0 contributes with half weight (even integrand)
    let mut s1 = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let c = t.cosh();
        let e = (-x * (c - 1.0)).exp();
        s0 += e;
        s1 += e * c;
        if e * c < 1e-18 * s1 {
            break;
        }
        k += 1;
    }
    (s0 * h, s1 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let b = bessel_i1_k1(1.0).unwrap();
        assert!((b.i1 - 0.565_159_103_992_485_0).abs() < 1e-15);
        assert!((b.k1 - 0.601_907_230_197_234_6).abs() < 1e-15);
        let b = bessel_i1_k1(2.5).unwrap();
        assert!((b.k1 / 0.073_890_816_347_747_2 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn small_argument_limit() {
        let b = bessel_i1_k1(1e-8).unwrap();
        assert!((b.i1 / 1e-8 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scaled_for_huge_argument() {
        let b = bessel_i1_k1(800.0).unwrap();
        assert!(b.scaled && b.i1.is_finite() && b.k1.is_finite());
        assert!(bessel_i1_k1(0.0).is_err());
    }
}
