//! Airy functions Ai, Bi and their derivatives on the real line.
//!
//! Three evaluation paths are stitched together:
//! * Maclaurin series for |x| ≤ 3,
//! * a high-order Taylor march of y'' = x·y on 3 < |x| < 8 (Ai is marched
//!   backwards from x = 8 where it is dominant, Bi comes from its all-positive
//!   Maclaurin series; on the negative side both are marched outward),
//! * asymptotic expansions for |x| ≥ 8 (exponentially scaled for x > 0,
//!   modulus/phase form for x < 0).
//!
//! For x > 0 the scaled pair Ai·e^{ζ}, Bi·e^{−ζ} with ζ = ⅔x^{3/2} never
//! overflows; the unscaled public entry point reports overflow explicitly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};

/// Ai(0) = 3^{−2/3}/Γ(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// −Ai′(0) = 3^{−1/3}/Γ(1/3).
pub const DAI0_NEG: f64 = 0.258_819_403_792_806_8;

const SERIES_EDGE: f64 = 3.0;
const ASYM_EDGE: f64 = 8.0;

/// Values of Ai, Bi and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryPair {
    pub ai: f64,
    pub bi: f64,
    pub dai: f64,
    pub dbi: f64,
}

/// Exponentially scaled Airy values: for x > 0 the Ai pair is multiplied by
/// e^{ζ} and the Bi pair by e^{−ζ}, ζ = ⅔x^{3/2}; for x ≤ 0, `zeta = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryScaled {
    pub ai: f64,
    pub bi: f64,
    pub dai: f64,
    pub dbi: f64,
    pub zeta: f64,
}

impl AiryScaled {
    /// Undo the scaling (may overflow to ∞ / underflow to 0 for large x).
    pub fn unscaled(&self) -> AiryPair {
        let d = (-self.zeta).exp();
        let g = self.zeta.exp();
        AiryPair { ai: self.ai * d, bi: self.bi * g, dai: self.dai * d, dbi: self.dbi * g }
    }
}

/// Ai, Bi, Ai′, Bi′ at `x`.
///
/// Returns [`CoulombError::Overflow`] when Bi(x) exceeds the `f64` range; the
/// scaled representation remains available through [`airy_scaled`].
pub fn airy_pair(x: f64) -> Result<AiryPair> {
    let s = airy_scaled(x)?;
    if s.zeta > 700.0 {
        return Err(CoulombError::Overflow {
            msg: format!("Bi({x}) overflows; use airy_scaled (log scale {:.3})", s.zeta),
            log_scale: s.zeta,
        });
    }
    Ok(s.unscaled())
}

/// Exponentially scaled Airy values (never overflow).
pub fn airy_scaled(x: f64) -> Result<AiryScaled> {
    if !x.is_finite() {
        return Err(CoulombError::domain("x", "must be finite"));
    }
    let zeta = if x > 0.0 { 2.0 / 3.0 * x * x.sqrt() } else { 0.0 };
    let p = if x.abs() <= SERIES_EDGE {
        maclaurin(x)
    } else if x >= ASYM_EDGE {
        return Ok(asymptotic_positive(x));
    } else if x <= -ASYM_EDGE {
        asymptotic_negative(x)
    } else if x > 0.0 {
        // Ai: march backwards from the asymptotic edge (dominant direction).
        let edge = asymptotic_positive(ASYM_EDGE).unscaled();
        let (ai, dai) = march(ASYM_EDGE, edge.ai, edge.dai, x);
        let m = maclaurin(x);
        AiryPair { ai, dai, bi: m.bi, dbi: m.dbi }
    } else {
        let start = maclaurin(-SERIES_EDGE);
        let (ai, dai) = march(-SERIES_EDGE, start.ai, start.dai, x);
        let (bi, dbi) = march(-SERIES_EDGE, start.bi, start.dbi, x);
        AiryPair { ai, bi, dai, dbi }
    };
    let g = zeta.exp();
    let d = (-zeta).exp();
    Ok(AiryScaled { ai: p.ai * g, dai: p.dai * g, bi: p.bi * d, dbi: p.dbi * d, zeta })
}

/// Maclaurin series, accurate for moderate |x| (all paths exact at 0).
pub fn maclaurin(x: f64) -> AiryPair {
    let x3 = x * x * x;
    // f = Σ t_k, g = Σ s_k, f′ = Σ d_k, g′ = Σ e_k.
    let (mut f, mut g, mut df, mut dg) = (1.0, x, 0.0, 1.0);
    let (mut t, mut s, mut d, mut e) = (1.0, x, 0.5 * x * x, 1.0);
    df += d;
    for k in 1..200 {
        let kf = k as f64;
        t *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        s *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        e *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        if k >= 2 {
            d *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            df += d;
        }
        f += t;
        g += s;
        dg += e;
        let scale = f.abs() + g.abs() + df.abs() + dg.abs();
        if t.abs() + s.abs() + d.abs() + e.abs() < 1e-18 * scale {
            break;
        }
    }
    let sq3 = 3f64.sqrt();
    AiryPair {
        ai: AI0 * f - DAI0_NEG * g,
        bi: sq3 * (AI0 * f + DAI0_NEG * g),
        dai: AI0 * df - DAI0_NEG * dg,
        dbi: sq3 * (AI0 * df + DAI0_NEG * dg),
    }
}

/// Coefficients u_k, v_k of the Airy asymptotic expansions.
fn uv_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0; n];
    let mut v = vec![1.0; n];
    for k in 1..n {
        let kf = k as f64;
        // u_k = u_{k−1} (6k−5)(6k−3)(6k−1) / (216 k (2k−1))
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

/// Sums Σ sign^k c_k/ζ^k up to the smallest term.
fn asym_sum(c: &[f64], zeta: f64, alternate: bool) -> f64 {
    let mut sum = 0.0;
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for (k, ck) in c.iter().enumerate() {
        let term = ck * pw * if alternate && k % 2 == 1 { -1.0 } else { 1.0 };
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
        if last < 1e-17 * sum.abs() {
            break;
        }
        pw /= zeta;
    }
    sum
}

fn asymptotic_positive(x: f64) -> AiryScaled {
    let (u, v) = uv_coeffs(40);
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let x14 = x.sqrt().sqrt();
    let spi = PI.sqrt();
    AiryScaled {
        ai: asym_sum(&u, zeta, true) / (2.0 * spi * x14),
        dai: -x14 * asym_sum(&v, zeta, true) / (2.0 * spi),
        bi: asym_sum(&u, zeta, false) / (spi * x14),
        dbi: x14 * asym_sum(&v, zeta, false) / spi,
        zeta,
    }
}

fn asymptotic_negative(x: f64) -> AiryPair {
    let (u, v) = uv_coeffs(60);
    let z = -x;
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    // Even/odd split: P = Σ(−1)^k u_{2k} ζ^{−2k}, Q = Σ(−1)^k u_{2k+1} ζ^{−2k−1}.
    let split = |c: &[f64]| -> (f64, f64) {
        let mut even = 0.0;
        let mut odd = 0.0;
        let mut pw = 1.0;
        let mut last = f64::INFINITY;
        for (k, ck) in c.iter().enumerate() {
            let term = ck * pw;
            if term.abs() > last {
                break;
            }
            last = term.abs();
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                even += sign * term;
            } else {
                odd += sign * term;
            }
            if last < 1e-17 {
                break;
            }
            pw /= zeta;
        }
        (even, odd)
    };
    let (p, q) = split(&u);
    let (r, s) = split(&v);
    let phase = zeta - PI / 4.0;
    let (sn, cs) = phase.sin_cos();
    let z14 = z.sqrt().sqrt();
    let spi = PI.sqrt();
    AiryPair {
        ai: (cs * p + sn * q) / (spi * z14),
        bi: (-sn * p + cs * q) / (spi * z14),
        dai: z14 * (sn * r - cs * s) / spi,
        dbi: z14 * (cs * r + sn * s) / spi,
    }
}

/// Taylor-series march of y'' = x·y from (x0, y, y′) to x1.
fn march(x0: f64, y0: f64, dy0: f64, x1: f64) -> (f64, f64) {
    const N: usize = 36;
    let mut x = x0;
    let mut y = y0;
    let mut dy = dy0;
    let dir = (x1 - x0).signum();
    let mut a = [0.0f64; N + 2];
    while (x1 - x) * dir > 0.0 {
        let h = dir * (x1 - x).abs().min(0.5);
        a[0] = y;
        a[1] = dy;
        // a_{n+2} = (x a_n + a_{n−1}) / ((n+1)(n+2))
        for n in 0..N {
            let prev = if n >= 1 { a[n - 1] } else { 0.0 };
            a[n + 2] = (x * a[n] + prev) / (((n + 1) * (n + 2)) as f64);
        }
        let mut val = 0.0;
        let mut der = 0.0;
        for n in (0..N + 2).rev() {
            val = val * h + a[n];
            if n >= 1 {
                der = der * h + n as f64 * a[n];
            }
        }
        y = val;
        dy = der;
        x += h;
        if (x1 - x).abs() < 1e-15 * x1.abs().max(1.0) {
            x = x1;
        }
    }
    (y, dy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero() {
        let p = airy_pair(0.0).unwrap();
        assert_eq!(p.ai, AI0);
        assert!((p.bi - AI0 * 3f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn known_values() {
        // Reference values (DLMF tables).
        let p = airy_pair(1.0).unwrap();
        assert!((p.ai - 0.135_292_416_312_881_4).abs() < 1e-15);
        assert!((p.bi - 1.207_423_594_952_871_3).abs() < 1e-14);
        let m = airy_pair(-5.0).unwrap();
        assert!((m.ai - 0.350_761_009_024_114_2).abs() < 1e-13);
    }

    #[test]
    fn overflow_reported() {
        assert!(matches!(airy_pair(120.0), Err(CoulombError::Overflow { .. })));
        assert!(airy_scaled(120.0).is_ok());
    }
}
