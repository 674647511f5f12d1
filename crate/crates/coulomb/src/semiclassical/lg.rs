//! Liouville–Green map for Q(x) = 1/x − 1 and the associated Agmon distance.
//!
//! With x = σ²r the eigen-equation becomes e_xx = σ^{−2}Q(x)e. The LG variable
//! ζ(x) has sign(ζ) = sign(x − 1) and
//!   (2/3)ζ^{3/2}    = √(x(x−1)) − arccosh√x        (x ≥ 1),
//!   (2/3)(−ζ)^{3/2} = π/2 − η(x)                   (x ≤ 1),
//! where η(x) = ∫₀ˣ √Q = arcsin√x + √(x(1−x)). The LG factor is q̃ = −Q/ζ = (dζ/dx)².

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};

/// Left end of the ζ range: ζ(0⁺) = −(3π/4)^{2/3}.
pub fn zeta_star() -> f64 {
    -(0.75 * PI).powf(2.0 / 3.0)
}

/// Default margin above ζ* for [`lg_potential`].
pub const POTENTIAL_MARGIN: f64 = 0.05;

/// Half-width in t = x − 1 of the turning-point series branch.
const SERIES_BAND: f64 = 0.1;

/// ζ(1 + t) = Σ Z_k t^{k+1}.
const ZETA_SERIES: [f64; 16] = [
    1.0,
    -0.2,
    0.097_142_857_142_857_14,
    -0.060_063_492_063_492_06,
    0.041_811_090_496_804_78,
    -0.031_252_262_657_976_95,
    0.024_499_517_550_728_434,
    -0.019_873_362_242_778_49,
    0.016_540_788_593_944_745,
    -0.014_046_202_652_652_617,
    0.012_121_498_548_845_184,
    -0.010_599_639_954_093_326,
    0.009_371_684_352_715_608,
    -0.008_363_856_776_329_26,
    0.007_524_601_698_137_776,
    -0.006_816_916_100_987_874,
];

/// q̃(1 + t) = Σ L_k t^k.
const FACTOR_SERIES: [f64; 16] = [
    1.0,
    -0.8,
    0.742_857_142_857_142_9,
    -0.713_650_793_650_793_6,
    0.695_244_691_816_120_4,
    -0.682_305_255_379_541_1,
    0.672_575_539_463_811_5,
    -0.664_917_525_381_262_9,
    0.658_687_688_310_991,
    -0.653_491_339_315_320_3,
    0.649_071_255_927_732_6,
    -0.645_251_709_154_436_7,
    0.641_908_029_344_290_4,
    -0.638_948_996_822_653_5,
    0.636_306_125_835_538,
    -0.633_926_865_030_574,
];

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * t + ck)
}

/// Liouville–Green data at one point x > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LGMap {
    pub x: f64,
    pub zeta: f64,
    /// q̃ = −Q/ζ = (dζ/dx)² > 0.
    pub lg_factor: f64,
    /// η(x) = ∫₀ˣ √Q, defined for x ≤ 1.
    pub eta: Option<f64>,
    /// Q(x) = 1/x − 1.
    pub q_fn: f64,
}

/// η(x) = arcsin√x + √(x(1−x)) on [0, 1].
pub fn eta_of_x(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x.sqrt().asin() + (x * (1.0 - x)).sqrt()
}

/// (2/3)|ζ|^{3/2} as a function of x, i.e. the classical action from the
/// turning point: π/2 − η(x) for x ≤ 1 and √(x(x−1)) − arccosh√x for x ≥ 1.
pub fn action_from_turning_point(x: f64) -> f64 {
    if x <= 1.0 {
        FRAC_PI_2 - eta_of_x(x)
    } else {
        (x * (x - 1.0)).sqrt() - x.sqrt().acosh()
    }
}

/// LG data at x > 0.
pub fn lg_map(x: f64) -> Result<LGMap> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(CoulombError::domain("x", format!("must be > 0 and finite, got {x}")));
    }
    let t = x - 1.0;
    let q_fn = 1.0 / x - 1.0;
    let (zeta, lg_factor) = if t.abs() < SERIES_BAND {
        (t * horner(&ZETA_SERIES, t), horner(&FACTOR_SERIES, t))
    } else {
        let a = action_from_turning_point(x);
        let z = (1.5 * a).powf(2.0 / 3.0);
        let zeta = if x > 1.0 { z } else { -z };
        (zeta, -q_fn / zeta)
    };
    let eta = if x <= 1.0 { Some(eta_of_x(x)) } else { None };
    Ok(LGMap { x, zeta, lg_factor, eta, q_fn })
}

/// Inverse map: the x > 0 with ζ(x) = `zeta`, for ζ > ζ*.
pub fn x_of_zeta(zeta: f64) -> Result<f64> {
    let zs = zeta_star();
    if !(zeta > zs) || !zeta.is_finite() {
        return Err(CoulombError::domain("zeta", format!("must exceed zeta* = {zs:.6}, got {zeta}")));
    }
    if zeta == 0.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = if zeta > 0.0 {
        let mut hi = 2.0;
        while lg_map(hi)?.zeta < zeta {
            hi *= 2.0;
        }
        (1.0, hi)
    } else {
        (0.0, 1.0)
    };
    let mut x = if zeta > 0.0 { (1.0 + zeta).min(hi) } else { (1.0 + zeta).clamp(1e-6, 1.0) };
    for _ in 0..200 {
        let m = lg_map(x.max(f64::MIN_POSITIVE))?;
        let f = m.zeta - zeta;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - f / m.lg_factor.sqrt();
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 1e-16 * x.max(1e-300) || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// LG potential V(ζ) = −q̃^{−1/4} d²(q̃^{1/4})/dζ² with the default stencil step.
pub fn lg_potential(zeta: f64) -> Result<f64> {
    let zs = zeta_star();
    if !(zeta > zs + POTENTIAL_MARGIN) {
        return Err(CoulombError::domain(
            "zeta",
            format!("V blows up at zeta* = {zs:.6}; need zeta > zeta* + {POTENTIAL_MARGIN}, got {zeta}"),
        ));
    }
    let h = (0.05 * (1.0 + zeta.abs())).min((zeta - zs) / 10.0);
    lg_potential_with_step(zeta, h)
}

/// V(ζ) with an explicit step for the 9-point (8th-order) stencil.
pub fn lg_potential_with_step(zeta: f64, h: f64) -> Result<f64> {
    const W: [f64; 9] = [
        -1.0 / 560.0,
        8.0 / 315.0,
        -0.2,
        1.6,
        -205.0 / 72.0,
        1.6,
        -0.2,
        8.0 / 315.0,
        -1.0 / 560.0,
    ];
    let zs = zeta_star();
    if !(zeta - 4.0 * h > zs) || !(h > 0.0) {
        return Err(CoulombError::domain("h", format!("stencil leaves the domain: zeta = {zeta}, h = {h}")));
    }
    let f = |z: f64| -> Result<f64> { Ok(lg_map(x_of_zeta(z)?)?.lg_factor.powf(0.25)) };
    let mut d2 = 0.0;
    for (j, w) in W.iter().enumerate() {
        d2 += w * f(zeta + (j as f64 - 4.0) * h)?;
    }
    d2 /= h * h;
    Ok(-d2 / f(zeta)?)
}

/// Agmon distance ρ_σ(s, r) = |∫ₛʳ √|1/u − σ²| du|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgmonDistance {
    pub sigma: f64,
    pub s: f64,
    pub r: f64,
    pub value: f64,
}

/// Agmon distance between two radii on the same side of the turning point
/// r* = σ^{−2}, in closed form. Straddling intervals are rejected; use
/// [`agmon_split`] to sum both sides.
pub fn agmon(sigma: f64, s: f64, r: f64) -> Result<AgmonDistance> {
    check(sigma, s, r)?;
    let (a, b) = (s.min(r), s.max(r));
    let rstar = 1.0 / (sigma * sigma);
    if a < rstar && b > rstar {
        return Err(CoulombError::domain(
            "r",
            format!("[{a}, {b}] straddles the turning point r* = {rstar}; split it (agmon_split)"),
        ));
    }
    let (xa, xb) = (sigma * sigma * a, sigma * sigma * b);
    let value = if b <= rstar {
        (eta_of_x(xb) - eta_of_x(xa)) / sigma
    } else {
        (action_from_turning_point(xb) - action_from_turning_point(xa)) / sigma
    };
    Ok(AgmonDistance { sigma, s, r, value: value.max(0.0) })
}

/// Agmon distance across the turning point (split at r*).
pub fn agmon_split(sigma: f64, s: f64, r: f64) -> Result<AgmonDistance> {
    check(sigma, s, r)?;
    let (a, b) = (s.min(r), s.max(r));
    let rstar = 1.0 / (sigma * sigma);
    let value = if a < rstar && b > rstar {
        agmon(sigma, a, rstar)?.value + agmon(sigma, rstar, b)?.value
    } else {
        agmon(sigma, a, b)?.value
    };
    Ok(AgmonDistance { sigma, s, r, value })
}

fn check(sigma: f64, s: f64, r: f64) -> Result<()> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(CoulombError::domain("sigma", format!("must be > 0, got {sigma}")));
    }
    if !(s >= 0.0) || !(r >= 0.0) || !s.is_finite() || !r.is_finite() {
        return Err(CoulombError::domain("r", format!("radii must be >= 0, got s = {s}, r = {r}")));
    }
    Ok(())
}
