//! The dispersive decay of e^{itH}f for a smooth bump on [1, 2]: sup norms
//! over t ∈ [10, 300] and the fitted exponent (expected −3/2).

use anyhow::Result;
use coulomb::evolution::{decay_scan, QuadratureConfig};
use coulomb::transform::CorpusProfile;
use coulomb::Charge;

fn main() -> Result<()> {
    let f = CorpusProfile::Bump12.sample(0.05)?;
    let times: Vec<f64> = (0..25).map(|i| 10.0 * 30f64.powf(i as f64 / 24.0)).collect();
    let scan = decay_scan(Charge::UNIT, &f, &times, &QuadratureConfig::default())?;
    println!("{:>9} {:>14} {:>12} {:>10}", "t", "sup |u|/r", "ratio", "argmax r");
    for i in 0..times.len() {
        println!("{:>9.3} {:>14.6e} {:>12.6} {:>10.2}", scan.t_values[i], scan.sup_norms[i], scan.ratios[i], scan.argmax_r[i]);
    }
    println!(
        "slope of log sup vs log t: {:.4}; max/median ratio {:.3}; verdict {:?}",
        scan.slope_sup, scan.max_over_median, scan.verdict
    );
    Ok(())
}
