//! Runs every validation suite and prints its checks, as `coulomb validate`
//! does one suite at a time.

use anyhow::Result;
use coulomb::cli::{run_suite, Suite};

fn main() -> Result<()> {
    for suite in Suite::ALL {
        let rep = run_suite(suite)?;
        println!("[{}] {}", suite.name(), if rep.pass { "PASS" } else { "FAIL" });
        for c in &rep.checks {
            println!("  {} {:<34} {:>14.6e}  (threshold {:e})", c.verdict(), c.name, c.measured, c.threshold);
        }
    }
    Ok(())
}
