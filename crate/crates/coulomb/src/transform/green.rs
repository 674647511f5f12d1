//! Resolvent kernel of H + z² = −d²/dr² + q/r + z² on the half line,
//!   G(z; r, s) = −φ(z, r<) ψ(z, r>),   W[φ, ψ] = 1,
//! with φ the regular solution (φ(0) = 0, φ′(0) = 1) and ψ the solution
//! decaying at infinity, ψ = −Γ(1 + a)·W_{−a,1/2}(2zr), a = q/(2z).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::profile::RadialProfile;
use crate::eigenbasis::ode::regular_at;
use crate::eigenbasis::Charge;
use crate::error::{CoulombError, Result};
use crate::quad::{exp_sinh, pairwise_sum_c};

/// One value of the resolvent kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenKernel {
    pub z: Complex64,
    pub r: f64,
    pub s: f64,
    pub value: Complex64,
}

fn check_z(z: Complex64) -> Result<()> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(CoulombError::domain("z", format!("need re(z) > 0, got {z}")));
    }
    Ok(())
}

/// Regular solution (φ, φ′) at unit charge for spectral parameter −z².
pub fn regular_solution(z: Complex64, r: f64) -> Result<(Complex64, Complex64)> {
    check_z(z)?;
    let st = regular_at(-(z * z), r)?;
    let g = st.log_scale.exp();
    Ok((st.y * g, st.dy * g))
}

/// Decaying solution (ψ, ψ′) at unit charge, normalized so that W[φ, ψ] = 1:
///   ψ(r) = −e^{−zr}∫₀^∞ e^{−τ}(τ/(τ + 2zr))^{α} dτ,  α = 1/(2z),
/// the Laplace integral for U(1 + α, 2, 2zr) with the contour rotated onto
/// the ray where 2zr·t is real.
pub fn decaying_solution(z: Complex64, r: f64) -> Result<(Complex64, Complex64)> {
    check_z(z)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(CoulombError::domain("r", format!("must be > 0, got {r}")));
    }
    let alpha = 0.5 / z;
    let w = 2.0 * z * r;
    let tol = 1e-14;
    let base = |tau: f64| (Complex64::new(tau, 0.0) / (tau + w)).ln() * alpha;
    let (i0, _) = exp_sinh(|tau| (base(tau) - tau).exp(), tol)?;
    let (i1, _) = exp_sinh(|tau| (base(tau) - tau).exp() / (tau + w), tol)?;
    let ez = (-z * r).exp();
    let psi = -ez * i0;
    // d/dr: the prefactor gives −zψ; d/dw of the integrand gives −α/(τ + w)·(…).
    let dpsi = -z * psi + ez * (2.0 * z) * alpha * i1;
    Ok((psi, dpsi))
}

/// G_q(z; r, s) = G₁(z/q; qr, qs)/q.
pub fn green_kernel(q: Charge, z: Complex64, r: f64, s: f64) -> Result<GreenKernel> {
    check_z(z)?;
    if !(r > 0.0) || !(s > 0.0) || !r.is_finite() || !s.is_finite() {
        return Err(CoulombError::domain("r", format!("radii must be > 0, got r = {r}, s = {s}")));
    }
    let qv = q.value();
    let zu = z / qv;
    let (lo, hi) = (r.min(s) * qv, r.max(s) * qv);
    let (phi, _) = regular_solution(zu, lo)?;
    let (psi, _) = decaying_solution(zu, hi)?;
    Ok(GreenKernel { z, r, s, value: -phi * psi / qv })
}

/// [(H + z²)^{−1}u](rᵢ) = ∫ G_q(z; rᵢ, s) u(s) ds by the profile's quadrature.
///
/// φ and ψ are evaluated once at every node and output radius, so the cost is
/// linear in the number of points.
pub fn green_apply(q: Charge, z: Complex64, f: &RadialProfile, r_grid: &[f64]) -> Result<Vec<Complex64>> {
    check_z(z)?;
    f.validate()?;
    let qv = q.value();
    let zu = z / qv;
    let eval = |r: &f64| -> Result<(Complex64, Complex64)> {
        Ok((regular_solution(zu, r * qv)?.0, decaying_solution(zu, r * qv)?.0))
    };
    let at_nodes: Vec<(Complex64, Complex64)> = f.nodes.par_iter().map(eval).collect::<Result<_>>()?;
    let at_out: Vec<(Complex64, Complex64)> = r_grid.par_iter().map(eval).collect::<Result<_>>()?;
    Ok(r_grid
        .iter()
        .zip(&at_out)
        .map(|(&r, &(phi_r, psi_r))| {
            let terms: Vec<Complex64> = f
                .nodes
                .iter()
                .zip(&at_nodes)
                .zip(f.values.iter().zip(&f.weights))
                .map(|((&s, &(phi_s, psi_s)), (u, w))| {
                    let g = if s <= r { phi_s * psi_r } else { phi_r * psi_s };
                    -g * (u * w / qv)
                })
                .collect();
            pairwise_sum_c(&terms)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wronskian_is_one() {
        for z in [Complex64::new(1.0, 0.0), Complex64::new(0.5, 2.0), Complex64::new(3.0, -1.0)] {
            for r in [0.3, 1.0, 4.0] {
                let (p, dp) = regular_solution(z, r).unwrap();
                let (s, ds) = decaying_solution(z, r).unwrap();
                let w = p * ds - dp * s;
                assert!((w - 1.0).norm() < 1e-9, "z = {z}, r = {r}: W = {w}");
            }
        }
    }
}
