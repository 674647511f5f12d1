//! Validation suites: the semiclassical approximation orders, the phase
//! function inequalities, the tunneling bound and the special-function
//! identities, each reported as a list of PASS/FAIL checks with the measured
//! quantities.

use std::f64::consts::PI;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolution::log_log_slope;
use crate::semiclassical::{
    airy_regime_approx, bessel_regime_approx, oscillatory_regime_approx, phase_zeta, tunneling_bound_check, x_of_zeta,
};
use crate::specfun::{airy_scaled, bessel_scaled, gamma_one_plus_iy, theta_phase, theta_phase_stirling};

/// Seed of the random sample points used by the special-function suite.
pub const SPECFUN_SEED: u64 = 0x5eed_c0de;

/// Available validation suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Bessel,
    Airy,
    Oscillatory,
    Phase,
    Tunneling,
    Specfun,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Bessel, Suite::Airy, Suite::Oscillatory, Suite::Phase, Suite::Tunneling, Suite::Specfun];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bessel => "bessel",
            Suite::Airy => "airy",
            Suite::Oscillatory => "oscillatory",
            Suite::Phase => "phase",
            Suite::Tunneling => "tunneling",
            Suite::Specfun => "specfun",
        }
    }
}

/// How a measured value is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<")]
    Below,
}

/// One PASS/FAIL check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub pass: bool,
    /// Free-form context: grid, sample counts, fitted constants.
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, measured: f64, relation: Relation, threshold: f64, detail: String) -> Check {
        let pass = match relation {
            Relation::AtMost => measured <= threshold,
            Relation::AtLeast => measured >= threshold,
            Relation::Below => measured < threshold,
        };
        Check { name: name.to_string(), measured, relation, threshold, pass, detail }
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Result of one suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// True iff every check passed.
    pub pass: bool,
}

impl ValidationReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        ValidationReport { suite, checks, pass }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// n log-spaced points on [a, b].
fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Runs one suite.
pub fn run_suite(suite: Suite) -> Result<ValidationReport> {
    let checks = match suite {
        Suite::Bessel => bessel()?,
        Suite::Airy => airy()?,
        Suite::Oscillatory => oscillatory()?,
        Suite::Phase => phase()?,
        Suite::Tunneling => tunneling()?,
        Suite::Specfun => specfun()?,
    };
    Ok(ValidationReport::new(suite, checks))
}

/// Fitted order and worst error constant of a regime approximation over
/// σ ∈ [0.02, 0.2] at fixed x = σ²r.
fn regime_order(approx: fn(f64, f64) -> Result<crate::semiclassical::RegimeApprox>, x: f64) -> Result<(f64, f64, Vec<f64>)> {
    let sig = log_space(0.02, 0.2, 8);
    let errs: Vec<f64> = sig.iter().map(|&s| approx(s, x).map(|a| a.measured_rel_err)).collect::<Result<_>>()?;
    let order = log_log_slope(&sig, &errs);
    let constant = sig.iter().zip(&errs).map(|(s, e)| e / s).fold(0.0, f64::max);
    Ok((order, constant, errs))
}

fn bessel() -> Result<Vec<Check>> {
    let x = 0.4;
    let (order, constant, errs) = regime_order(bessel_regime_approx, x)?;
    let (a, b) = (bessel_regime_approx(0.01, x)?, bessel_regime_approx(0.02, x)?);
    let local = (b.measured_rel_err / a.measured_rel_err).log2();
    let seed = [0.02, 0.1, 0.2]
        .iter()
        .map(|&s| bessel_regime_approx(s, 1e-6).map(|e| e.measured_rel_err))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(vec![
        Check::new(
            "bessel_error_order",
            order,
            Relation::AtLeast,
            0.9,
            format!("least-squares slope of log rel. error vs log sigma, sigma in [0.02, 0.2] (8 points), x = {x}; errors {errs:?}"),
        ),
        Check::new("bessel_error_constant", constant, Relation::AtMost, 0.07, format!("max rel. error / sigma at x = {x}")),
        Check::new("bessel_local_order_small_sigma", local, Relation::AtLeast, 0.9, "log2 of error ratio between sigma = 0.02 and 0.01".into()),
        Check::new("bessel_seed_limit", seed, Relation::AtMost, 1e-4, "max rel. error at x = 1e-6 over sigma in {0.02, 0.1, 0.2}".into()),
    ])
}

fn airy() -> Result<Vec<Check>> {
    let x = 0.75;
    let (order, constant, errs) = regime_order(airy_regime_approx, x)?;
    let s = 0.05;
    let tp = airy_regime_approx(s, 1.0)?.measured_rel_err / s;
    Ok(vec![
        Check::new(
            "airy_error_order",
            order,
            Relation::AtLeast,
            0.9,
            format!("least-squares slope of log rel. error vs log sigma, sigma in [0.02, 0.2] (8 points), x = {x}; errors {errs:?}"),
        ),
        Check::new("airy_error_constant", constant, Relation::AtMost, 0.5, format!("max rel. error / sigma at x = {x}")),
        Check::new("airy_turning_point_constant", tp, Relation::AtMost, 0.2, "rel. error / sigma at the turning point x = 1, sigma = 0.05".into()),
    ])
}

fn oscillatory() -> Result<Vec<Check>> {
    let s = 0.1;
    let period = 2.0 * PI / s;
    let zs = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    let mut worst = Vec::new();
    for &z in &zs {
        let r0 = x_of_zeta(z)? / (s * s);
        let w = (0..32)
            .map(|k| oscillatory_regime_approx(s, r0 + period * k as f64 / 32.0).map(|a| a.measured_rel_err))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        worst.push(w);
    }
    let exponent = -log_log_slope(&zs, &worst);
    let scaled = zs.iter().zip(&worst).map(|(z, w)| w * z.powf(1.5)).fold(0.0, f64::max) / s;
    Ok(vec![
        Check::new(
            "oscillatory_decay_exponent",
            exponent,
            Relation::AtLeast,
            1.4,
            format!("minus the slope of log max error (over one period) vs log zeta, zeta in {zs:?}, sigma = {s}; errors {worst:?}"),
        ),
        Check::new("oscillatory_weighted_constant", scaled, Relation::AtMost, 1.0, "max over zeta of error * zeta^1.5 / sigma".into()),
    ])
}

fn phase() -> Result<Vec<Check>> {
    let (k, c) = (4.0f64, 0.35f64);
    let (s_lo, s_hi) = (k * k / (c * c), 1e5f64);
    let lower = (1.0 - 1.0 / (k * k)).sqrt();
    let (mut n, mut min_lower, mut max_upper, mut max_d2, mut min_gap) = (0usize, f64::INFINITY, 0.0f64, f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..100 {
        let s = s_lo * (s_hi / s_lo).powf((i as f64 + 0.5) / 100.0);
        for j in 0..100 {
            let sig = k / s.sqrt() + (c - k / s.sqrt()) * (j as f64 + 0.5) / 100.0;
            let r = s * (1.0 + 3.0 * ((i * 7 + j * 13) % 100) as f64 / 100.0);
            let (pr, ps) = (phase_zeta(sig, r)?, phase_zeta(sig, s)?);
            min_lower = min_lower.min(pr.d1 / (r * lower));
            max_upper = max_upper.max(pr.d1 / r);
            max_d2 = max_d2.max(pr.d2);
            min_gap = min_gap.min((pr.d1 - ps.d1) / (r - s));
            n += 1;
        }
    }
    let domain = format!("k = {k}, c = {c}, {n} samples: s in [k^2/c^2, 1e5], sigma in (k/sqrt(s), c), r in [s, 4s]");
    Ok(vec![
        Check::new("phase_d1_lower", min_lower, Relation::AtLeast, 0.9, format!("min zeta_r'/(r sqrt(1 - k^-2)); {domain}")),
        Check::new("phase_d1_upper", max_upper, Relation::AtMost, 1.2, "max zeta_r'/r (the constant C)".into()),
        Check::new("phase_d2_negative", max_d2, Relation::Below, 0.0, "max zeta_r''".into()),
        Check::new("phase_d1_monotone_gap", min_gap, Relation::AtLeast, 0.5, "min (zeta_r' - zeta_s')/(r - s) over r > s".into()),
    ])
}

fn tunneling() -> Result<Vec<Check>> {
    let sig = log_space(0.02, 0.2, 10);
    let radii = log_space(0.01, 1e5, 200);
    let rep = tunneling_bound_check(&sig, &radii)?;
    Ok(vec![Check::new(
        "tunneling_sup",
        rep.sup,
        Relation::AtMost,
        -rep.eps0,
        format!(
            "sup of sigma (log|e| - log r) over sigma in [0.02, 0.2] x r in [0.01, 1e5] with sigma^2 r <= 0.5: argmax sigma = {:.4}, r = {:.4}; {} points, {} outside the region",
            rep.argmax_sigma, rep.argmax_r, rep.points, rep.skipped
        ),
    )])
}

fn specfun() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPECFUN_SEED);
    let n = 200;
    let mut airy_w = 0.0f64;
    for _ in 0..n {
        let x: f64 = rng.gen_range(-100.0..30.0);
        let a = airy_scaled(x)?;
        airy_w = airy_w.max((a.ai * a.dbi - a.dai * a.bi - 1.0 / PI).abs());
    }
    let mut bessel_w = 0.0f64;
    for _ in 0..n {
        let x = 10f64.powf(rng.gen_range(-3.0..200f64.log10()));
        let b = bessel_scaled(x)?;
        let (di1, dk1) = (b.i0 - b.i1 / x, -b.k0 - b.k1 / x);
        bessel_w = bessel_w.max(((b.i1 * dk1 - di1 * b.k1) * x + 1.0).abs());
    }
    let mut gamma_m = 0.0f64;
    for _ in 0..n {
        let y = 10f64.powf(rng.gen_range(-6.0..50f64.log10()));
        let g = gamma_one_plus_iy(y)?;
        let lhs = (2.0 * g.log_modulus + (PI * y).sinh().ln() - (PI * y).ln()).exp();
        gamma_m = gamma_m.max((lhs - 1.0).abs());
    }
    let sig = log_space(0.005, 0.05, 12);
    let rem: Vec<f64> = sig.iter().map(|&s| theta_phase(s).map(|t| (t - theta_phase_stirling(s)).abs())).collect::<Result<_>>()?;
    let order = log_log_slope(&sig, &rem);
    Ok(vec![
        Check::new("airy_wronskian", airy_w, Relation::AtMost, 1e-10, format!("max |Ai Bi' - Ai' Bi - 1/pi| at {n} points x in [-100, 30] (scaled pair)")),
        Check::new("bessel_wronskian", bessel_w, Relation::AtMost, 1e-10, format!("max |x W[I1, K1] + 1| at {n} log-uniform points x in [1e-3, 200]")),
        Check::new(
            "gamma_modulus_identity",
            gamma_m,
            Relation::AtMost,
            1e-10,
            format!("max ||Gamma(1+iy)|^2 sinh(pi y)/(pi y) - 1| at {n} log-uniform points y in [1e-6, 50]"),
        ),
        Check::new(
            "theta_stirling_remainder_order",
            order,
            Relation::AtLeast,
            3.0,
            "slope of log|theta - Stirling form| vs log sigma, sigma in [0.005, 0.05] (12 points)".into(),
        ),
    ])
}
