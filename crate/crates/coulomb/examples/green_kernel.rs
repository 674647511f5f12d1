//! The resolvent kernel G(z; r, s) of (H + z²)⁻¹: the ODE residual off the
//! diagonal, the unit derivative jump, and agreement with the spectral
//! functional calculus 1/(σ² + z²).

use anyhow::Result;
use coulomb::transform::{functional_calculus, green_apply, green_kernel, CorpusProfile, SigmaGrid, DEFAULT_SIGMA_MAX};
use coulomb::Charge;
use num_complex::Complex64;

fn main() -> Result<()> {
    let q = Charge::UNIT;
    let z = Complex64::new(0.8, 1.2);
    let g = |r: f64, s: f64| green_kernel(q, z, r, s).map(|k| k.value);
    let (s, h) = (2.0, 1e-3);

    for r in [0.5, 1.2, 3.0] {
        let d2 = (-g(r - 2.0 * h, s)? + 16.0 * g(r - h, s)? - 30.0 * g(r, s)? + 16.0 * g(r + h, s)? - g(r + 2.0 * h, s)?) / (12.0 * h * h);
        let res = -d2 + (1.0 / r + z * z) * g(r, s)?;
        println!("r = {r}: G = {:.10}, residual of (-d^2 + 1/r + z^2)G = {:.2e}", g(r, s)?, res.norm());
    }

    let right = (-25.0 * g(s, s)? + 48.0 * g(s + h, s)? - 36.0 * g(s + 2.0 * h, s)? + 16.0 * g(s + 3.0 * h, s)? - 3.0 * g(s + 4.0 * h, s)?) / (12.0 * h);
    let left = (25.0 * g(s, s)? - 48.0 * g(s - h, s)? + 36.0 * g(s - 2.0 * h, s)? - 16.0 * g(s - 3.0 * h, s)? + 3.0 * g(s - 4.0 * h, s)?) / (12.0 * h);
    println!("derivative jump at r = s: {:.8}", left - right);

    let f = CorpusProfile::Bump12.sample(1.0 / 32.0)?;
    let radii: Vec<f64> = (1..=120).map(|i| 0.05 * i as f64).collect();
    let direct = green_apply(q, z, &f, &radii)?;
    let spectral = functional_calculus(q, |l| 1.0 / (l + z * z), &f, &SigmaGrid::new(DEFAULT_SIGMA_MAX, 6.0)?, &radii)?;
    println!("resolvent vs functional calculus: relative L2 difference {:.2e}", spectral.rel_l2_error(&direct)?);
    Ok(())
}
