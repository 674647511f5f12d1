//! Stationary points of the kernel phase tσ² ∓ (phase_r ∓ phase_s): the
//! high-energy point near (r − s)/(2t) and the phase derivative there.

use anyhow::Result;
use coulomb::evolution::{phase_derivative, stationary_points, PhaseBranch, PhasePairing};

fn main() -> Result<()> {
    for (t, r, s) in [(1.0, 10.0, 2.0), (4.0, 60.0, 10.0), (10.0, 30.0, 5.0), (100.0, 3.0, 1.0)] {
        let roots = stationary_points(t, r, s, PhaseBranch::Minus, PhasePairing::Difference);
        println!("t = {t}, r = {r}, s = {s}: roots {roots:.6?}, (r - s)/(2t) = {:.6}", (r - s) / (2.0 * t));
        if let Some(&sigma) = roots.last() {
            let g = 2.0 * t * sigma - (phase_derivative(sigma, r, 0.35)? - phase_derivative(sigma, s, 0.35)?);
            println!("    residual 2t sigma - (phase_r' - phase_s') = {g:.2e}");
        }
        let plus = stationary_points(t, r, s, PhaseBranch::Plus, PhasePairing::Difference);
        println!("    plus branch: {} root(s)", plus.len());
    }
    Ok(())
}
