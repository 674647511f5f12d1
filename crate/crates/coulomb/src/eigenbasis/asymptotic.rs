//! Large-σr asymptotic form of the normalized basis.
//!
//! With η = 1/(2σ), ρ = σr and Θ = ρ − η·log(2ρ) + θ(σ), the normalized
//! eigenfunction is
//!   e(σ, r) = (2/√π)·Im(e^{iΘ}·S(ρ)),   S = ₂F₀(1+iη, iη; ; 1/(2iρ)),
//! an asymptotic series that is usable once its terms fall below the
//! requested tolerance before they start to grow (roughly ρ ≫ η²).

use num_complex::Complex64;

/// H⁺ = e^{iΘ}S and dH⁺/dr at (σ, r), or `None` when the series does not
/// reach `tol` before diverging. `theta` is θ(σ) = arg Γ(1 + iη).
pub fn hplus(sigma: f64, r: f64, theta: f64, tol: f64) -> Option<(Complex64, Complex64)> {
    let eta = 0.5 / sigma;
    let rho = sigma * r;
    let tol = tol.max(1e-17);
    let i = Complex64::i();
    let inv = Complex64::new(0.0, -0.5 / rho); // 1/(2iρ)
    let mut t = Complex64::new(1.0, 0.0);
    let mut s = t;
    let mut ds = Complex64::new(0.0, 0.0); // Σ k t_k
    let kmax = (2.0 * rho + 4.0).min(400.0) as usize;
    let mut converged = false;
    for k in 0..kmax {
        let kf = k as f64;
        t = t * Complex64::new(1.0 + kf, eta) * Complex64::new(kf, eta) * inv / (kf + 1.0);
        s += t;
        ds += t * (kf + 1.0);
        if t.norm() <= tol * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let big_theta = rho - eta * (2.0 * rho).ln() + theta;
    let ph = Complex64::from_polar(1.0, big_theta);
    let h = ph * s;
    // d/dρ: Θ′ = 1 − η/ρ, S′ = −Σ k t_k/ρ.
    let dh_drho = ph * (i * (1.0 - eta / rho) * s - ds / rho);
    Some((h, dh_drho * sigma))
}

/// Normalization 2/√π of the sine asymptotics.
pub const AMPLITUDE: f64 = 2.0 / 1.772_453_850_905_516;

/// (e, ∂ᵣe) from the asymptotic series.
pub fn e_asymptotic(sigma: f64, r: f64, theta: f64, tol: f64) -> Option<(f64, f64)> {
    let (h, dh) = hplus(sigma, r, theta, tol)?;
    Some((AMPLITUDE * h.im, AMPLITUDE * dh.im))
}

/// e(σ, r) alone from the asymptotic series, or `None` as for [`hplus`].
///
/// The term ratio (k+1+iη)(k+iη)/(2iρ(k+1)) is formed in real arithmetic, so
/// each term costs one complex product; this is the inner loop of the
/// spectral synthesis.
pub fn e_asymptotic_value(sigma: f64, r: f64, theta: f64, tol: f64) -> Option<f64> {
    let eta = 0.5 / sigma;
    let rho = sigma * r;
    let tol2 = tol.max(1e-17).powi(2);
    let half_inv = 0.5 / rho;
    let (mut tr, mut ti) = (1.0f64, 0.0f64);
    let (mut sr, mut si) = (1.0f64, 0.0f64);
    let kmax = (2.0 * rho + 4.0).min(400.0) as usize;
    let mut converged = false;
    for k in 0..kmax {
        let kf = k as f64;
        let c = half_inv / (kf + 1.0);
        // (a + ib)·(−i)·c with a = k(k+1) − η², b = η(2k+1).
        let fr = eta * (2.0 * kf + 1.0) * c;
        let fi = -(kf * (kf + 1.0) - eta * eta) * c;
        let nr = tr * fr - ti * fi;
        ti = tr * fi + ti * fr;
        tr = nr;
        sr += tr;
        si += ti;
        if tr * tr + ti * ti <= tol2 * (sr * sr + si * si) {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let (sn, cs) = (rho - eta * (2.0 * rho).ln() + theta).sin_cos();
    Some(AMPLITUDE * (sn * sr + cs * si))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn amplitude_constant() {
        assert!((AMPLITUDE - 2.0 / PI.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn diverges_when_rho_small_against_eta_squared() {
        assert!(hplus(0.05, 20.0, 0.0, 1e-14).is_none());
        assert!(hplus(2.0, 50.0, 0.0, 1e-14).is_some());
    }

    #[test]
    fn value_only_form_matches_hplus() {
        for &(sigma, r) in &[(0.7, 30.0), (2.0, 5.0), (9.0, 0.4), (40.0, 3.0), (0.3, 200.0)] {
            let theta = 0.37;
            let full = e_asymptotic(sigma, r, theta, 1e-15).map(|v| v.0);
            let fast = e_asymptotic_value(sigma, r, theta, 1e-15);
            assert_eq!(full.is_some(), fast.is_some());
            if let (Some(a), Some(b)) = (full, fast) {
                assert!((a - b).abs() <= 1e-14, "{sigma} {r}: {a} vs {b}");
            }
        }
    }
}
