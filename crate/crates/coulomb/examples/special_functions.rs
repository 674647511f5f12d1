//! Special-function kernels: Airy and modified Bessel pairs with their
//! Wronskians, |Γ(1+iy)| and the Coulomb phase θ(σ) against its Stirling form.

use std::f64::consts::PI;

use anyhow::Result;
use coulomb::specfun::{airy_pair, bessel_i1_k1, gamma_one_plus_iy, theta_phase, theta_phase_stirling};

fn main() -> Result<()> {
    println!("Airy: W[Ai, Bi] = 1/pi = {:.16}", 1.0 / PI);
    for x in [-20.0, -1.0, 0.0, 2.0, 8.0] {
        let a = airy_pair(x)?;
        println!("  x = {x:>6}: Ai = {:+.12e}, Bi = {:+.12e}, W = {:.16}", a.ai, a.bi, a.ai * a.dbi - a.dai * a.bi);
    }

    println!("Bessel: x W[I1, K1] = -1");
    for x in [1e-3, 0.5, 5.0, 50.0] {
        let b = bessel_i1_k1(x)?;
        println!("  x = {x:>6}: I1 = {:.12e}, K1 = {:.12e}, xW = {:.16}", b.i1, b.k1, x * (b.i1 * b.dk1 - b.di1 * b.k1));
    }

    println!("|Gamma(1+iy)|^2 sinh(pi y)/(pi y) = 1");
    for y in [1e-4, 0.5, 3.0, 20.0] {
        let g = gamma_one_plus_iy(y)?;
        let v = (2.0 * g.log_modulus + (PI * y).sinh().ln() - (PI * y).ln()).exp();
        println!("  y = {y:>6}: arg Gamma = {:+.12}, identity = {v:.16}", g.argument);
    }

    println!("theta(sigma) and its Stirling form (remainder ~ sigma^3)");
    for s in [0.2, 0.1, 0.05, 0.025] {
        let (t, st) = (theta_phase(s)?, theta_phase_stirling(s));
        println!("  sigma = {s:>6}: theta = {t:+.14}, remainder = {:+.3e}, /sigma^3 = {:+.5}", t - st, (t - st) / s.powi(3));
    }
    Ok(())
}
