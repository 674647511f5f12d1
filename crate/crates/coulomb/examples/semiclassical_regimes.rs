//! Leading-order semiclassical approximations of e(σ, r) in the Bessel,
//! Airy and oscillatory regimes, the tunneling bound and the phase ζ.

use anyhow::Result;
use coulomb::evolution::log_log_slope;
use coulomb::semiclassical::{
    airy_regime_approx, bessel_regime_approx, oscillatory_regime_approx, phase_zeta, tunneling_bound_check, x_of_zeta,
};

fn main() -> Result<()> {
    let sig: Vec<f64> = (0..8).map(|i| 0.02 * 10f64.powf(i as f64 / 7.0)).collect();
    for (name, x, f) in [
        ("Bessel", 0.4, bessel_regime_approx as fn(f64, f64) -> coulomb::Result<_>),
        ("Airy", 0.75, airy_regime_approx),
    ] {
        let errs: Vec<f64> = sig.iter().map(|&s| f(s, x).map(|a| a.measured_rel_err)).collect::<coulomb::Result<_>>()?;
        println!("{name} regime at x = sigma^2 r = {x}:");
        for (s, e) in sig.iter().zip(&errs) {
            println!("  sigma = {s:.4}: rel. error {e:.4e} (error/sigma = {:.4})", e / s);
        }
        println!("  fitted order in sigma: {:.3}", log_log_slope(&sig, &errs));
    }

    let s = 0.1;
    println!("Oscillatory regime, sigma = {s}: worst error over one period vs zeta");
    let zs = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    let mut worst = Vec::new();
    for z in zs {
        let r0 = x_of_zeta(z)? / (s * s);
        let period = 2.0 * std::f64::consts::PI / s;
        let w = (0..32).map(|k| oscillatory_regime_approx(s, r0 + period * k as f64 / 32.0).map(|a| a.measured_rel_err)).try_fold(0.0f64, |m, e| e.map(|e| m.max(e)))?;
        println!("  zeta = {z:>4}: {w:.4e}");
        worst.push(w);
    }
    println!("  decay exponent: {:.3}", -log_log_slope(&zs, &worst));

    let sigma: Vec<f64> = (0..10).map(|i| 0.02 * 10f64.powf(i as f64 / 9.0)).collect();
    let radii: Vec<f64> = (0..200).map(|i| 0.01 * 1e5f64.powf(i as f64 / 199.0)).collect();
    let t = tunneling_bound_check(&sigma, &radii)?;
    println!(
        "Tunneling: sup sigma(log|e| - log r) = {:.4} at sigma = {:.4}, r = {:.1} ({})",
        t.sup,
        t.argmax_sigma,
        t.argmax_r,
        if t.pass { "PASS" } else { "FAIL" }
    );

    let p = phase_zeta(0.2, 2000.0)?;
    println!("Phase zeta(0.2, 2000) = {:.6}: zeta' = {:.6}, zeta'' = {:.3e}", p.value, p.d1, p.d2);
    Ok(())
}
