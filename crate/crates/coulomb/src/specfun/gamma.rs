//! Complex log-gamma on the right half plane and the polar form of Γ(1+iy).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of Γ(z) for Re z > 0.
///
/// The imaginary part is the continuous branch obtained along horizontal
/// lines from the real axis (no 2π jumps), i.e. the same branch as
/// Σ log of the factors in Γ(z+n) = (z+n-1)…z Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(CoulombError::domain("z", format!("log_gamma needs Re z > 0, got {z}")));
    }
    // For small real parts shift right so the Lanczos sum sees Re ≥ 1.5;
    // the shift is undone with principal logs, each of which is continuous
    // because every factor has positive real part.
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 1.5 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(lanczos_log(w) - shift)
}

fn lanczos_log(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm + 0.5) * t.ln() - t + x.ln()
}

/// Polar form of Γ(1+iy).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaPolar {
    /// |Γ(1+iy)| > 0.
    pub modulus: f64,
    /// log |Γ(1+iy)|, finite even where the modulus underflows.
    pub log_modulus: f64,
    /// arg Γ(1+iy), continuous in y.
    pub argument: f64,
}

/// Returns |Γ(1+iy)|² = πy / sinh(πy) together with the continuous argument.
pub fn gamma_one_plus_iy(y: f64) -> Result<GammaPolar> {
    if !y.is_finite() {
        return Err(CoulombError::domain("y", "must be finite"));
    }
    let log_mod2 = log_pi_y_over_sinh(y);
    let argument = if y == 0.0 {
        0.0
    } else {
        log_gamma(Complex64::new(1.0, y))?.im
    };
    Ok(GammaPolar {
        modulus: (0.5 * log_mod2).exp(),
        log_modulus: 0.5 * log_mod2,
        argument,
    })
}

/// log(πy / sinh(πy)), cancellation-safe near 0 and overflow-safe for large |y|.
pub fn log_pi_y_over_sinh(y: f64) -> f64 {
    let x = PI * y.abs();
    if x < PI * 1e-4 {
        let x2 = x * x;
        // πy/sinh(πy) = 1 − x²/6 + 7x⁴/360 − 31x⁶/15120 + …
        (-x2 / 6.0 + 7.0 * x2 * x2 / 360.0 - 31.0 * x2 * x2 * x2 / 15120.0).ln_1p()
    } else {
        // sinh x = e^x (1 − e^{−2x}) / 2
        (2.0 * x).ln() - x - (-(-2.0 * x).exp()).ln_1p()
    }
}

/// θ(σ) = arg Γ(1 + i/(2σ)), the Coulomb phase shift at unit charge.
pub fn theta_phase(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(CoulombError::domain("sigma", format!("must be > 0, got {sigma}")));
    }
    Ok(log_gamma(Complex64::new(1.0, 0.5 / sigma))?.im)
}

/// Small-σ Stirling form −log(2σ)/(2σ) − 1/(2σ) + π/4 − σ/6 of θ(σ); the
/// remainder is −σ³/45 + O(σ⁵).
pub fn theta_phase_stirling(sigma: f64) -> f64 {
    -(2.0 * sigma).ln() / (2.0 * sigma) - 1.0 / (2.0 * sigma) + PI / 4.0 - sigma / 6.0
}
