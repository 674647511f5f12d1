//! Applies e^{itH} to the default bump and prints the sup norm, the
//! conserved L² norm and the moving wave packet.

use anyhow::Result;
use coulomb::evolution::{evolve, QuadratureConfig};
use coulomb::transform::CorpusProfile;
use coulomb::Charge;

fn main() -> Result<()> {
    let f = CorpusProfile::Bump12.sample(0.05)?;
    let cfg = QuadratureConfig::default();
    println!("||u(0)||^2 = {:.12}, ||f||_L1(R^3) = {:.6}", f.norm_sq(), f.l1_3d());
    for t in [0.1, 0.5, 1.0] {
        let u = evolve(Charge::UNIT, &f, t, &cfg)?;
        let norm = u.profile.norm_sq();
        let (imax, _) = u.profile.values.iter().enumerate().fold((0, 0.0), |b, (i, v)| if v.norm() > b.1 { (i, v.norm()) } else { b });
        println!(
            "t = {t:>4}: sup|u|/r = {:.6e}, ||u||^2 = {norm:.12}, peak of |u| at r = {:.3}, quad_err = {:.1e}",
            u.sup_norm, u.profile.nodes[imax], u.quad_err
        );
    }
    Ok(())
}
