//! Mollified propagator kernel K_t(r, s) on a log grid: the scaled sup
//! t^{3/2}·max|K_t| at several times, and the low/high energy split.

use anyhow::Result;
use coulomb::evolution::{kernel_estimate, kernel_matrix, QuadratureConfig};
use coulomb::Charge;

fn main() -> Result<()> {
    let cfg = QuadratureConfig::default();
    let radii: Vec<f64> = (0..12).map(|i| 0.5 * 100f64.powf(i as f64 / 11.0)).collect();
    for t in [1.0, 4.0, 16.0] {
        let k = kernel_matrix(Charge::UNIT, t, &radii, &cfg)?;
        let (sup, r, s) = k.sup_scaled();
        println!(
            "t = {t:>4}: t^1.5 sup|K| = {sup:.5} at (r, s) = ({r:.2}, {s:.2}); eps down to {:.2e}, converged {}",
            k.eps.last().unwrap(),
            k.converged
        );
    }
    let e = kernel_estimate(Charge::UNIT, 4.0, 3.0, 7.0, &cfg)?;
    println!("K_4(3, 7) = {:.8} = low {:.8} + high {:.8}", e.value, e.low, e.high);
    Ok(())
}
