//! Forward and inverse distorted Fourier transforms of the profile corpus,
//! with the Plancherel identity ∫u² dr = ½∫ĝ² dσ for several charges.

use anyhow::Result;
use coulomb::transform::{forward_transform, inverse_transform, plancherel_check, CorpusProfile, PlancherelConfig, SigmaGrid};
use coulomb::Charge;

fn main() -> Result<()> {
    println!("{:>14} {:>5} {:>14} {:>12} {:>10}", "profile", "q", "||u||^2", "rel_err", "sigma_max");
    for q in [0.5, 1.0, 2.0] {
        let charge = Charge::new(q)?;
        for p in CorpusProfile::ALL {
            let f = p.sample(1.0 / 32.0)?;
            let rep = plancherel_check(charge, &f, &PlancherelConfig::default())?;
            println!("{:>14} {q:>5} {:>14.10} {:>12.2e} {:>10}", p.name(), rep.lhs, rep.rel_err, rep.sigma_max);
        }
    }

    // Round trip of the default bump.
    let f = CorpusProfile::Bump12.sample(1.0 / 32.0)?;
    let ghat = forward_transform(Charge::UNIT, &f, &SigmaGrid::new(90.0, f.support.1)?)?;
    let radii: Vec<f64> = (0..=10).map(|i| 1.0 + 0.1 * i as f64).collect();
    let back = inverse_transform(Charge::UNIT, &ghat, &radii)?;
    for (r, v) in radii.iter().zip(&back.values) {
        println!("r = {r:.1}: u = {:+.10}, U^-1 U u = {v:+.10}", CorpusProfile::Bump12.eval(*r));
    }
    Ok(())
}
