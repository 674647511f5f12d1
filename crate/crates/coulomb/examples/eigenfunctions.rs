//! Evaluates the distorted Fourier basis e(σ, r) across its regimes and
//! compares it with the regular solution φ and with the large-r sine form.

use anyhow::Result;
use coulomb::eigenbasis::{e_basis, log_mu, phi_reference, spectral_density, theta_big, AMPLITUDE};
use coulomb::Charge;

fn main() -> Result<()> {
    let q = Charge::UNIT;
    println!("{:>8} {:>10} {:>24} {:>20} {:>10}", "sigma", "r", "e(sigma, r)", "regime", "err_est");
    for &sigma in &[0.05, 0.3, 1.0, 8.0] {
        for &r in &[1e-3, 0.5, 5.0, 60.0, 400.0] {
            let e = e_basis(q, sigma, r, 1e-12)?;
            println!("{sigma:>8} {r:>10} {:>24.16e} {:>20} {:>10.2e}", e.value, e.regime.as_str(), e.err_est);
        }
    }

    // e = 2μ(σ)·φ(σ, r) at unit charge, with μ² = σ/(e^{π/σ} − 1).
    let (sigma, r) = (1.0, 5.0);
    let phi = phi_reference(sigma, r, 1e-14)?;
    let assembled = 2.0 * log_mu(sigma).exp() * phi.phi;
    let e = e_basis(q, sigma, r, 1e-12)?.value;
    println!("\ne(1, 5) = {e:.16}, 2 mu phi = {assembled:.16}, difference {:.1e}", (e - assembled).abs());

    // Far out, e approaches (2/√π)·sin Θ(σ, r).
    for r in [100.0, 1000.0, 10000.0] {
        let e = e_basis(q, sigma, r, 1e-12)?.value;
        let s = AMPLITUDE * theta_big(sigma, r)?.sin();
        println!("r = {r:>7}: e = {e:+.12}, (2/sqrt pi) sin Theta = {s:+.12}, gap {:.2e}", (e - s).abs());
    }

    // Spectral density ρ′_q(σ) = 2qσ/(e^{qπ/σ} − 1) for a few charges.
    for qv in [0.5, 1.0, 2.0] {
        let d = spectral_density(Charge::new(qv)?, 1.0);
        println!("q = {qv}: rho'(1) = {:.12}", d.density);
    }
    Ok(())
}
