//! Frobenius seed and high-order Taylor marching for r·f″ = (1 − λr)·f,
//! i.e. −f″ + f/r = λf, with f(0) = 0, f′(0) = 1.
//!
//! λ = σ² (real) gives the regular eigenfunction φ(σ, ·); λ = −z² (complex)
//! gives the regular solution used by the resolvent. The march keeps an
//! explicit logarithmic scale so exponentially growing solutions in the
//! classically forbidden region never overflow.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};

/// Field of ODE values: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn zero() -> Self;
    fn from_f64(x: f64) -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Highest Taylor order tried before the step is halved.
const MAX_ORDER: usize = 90;
/// Relative size of the neglected Taylor tail.
const TAIL: f64 = 1e-17;

/// Truncated power series φ(r) = Σ aₘ rᵐ about the regular singular point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusSeed {
    /// a₁, a₂, …, a_N (a₀ = 0 is implicit).
    pub coeffs: Vec<f64>,
    /// Radius r₀ at which the series is summed.
    pub radius: f64,
}

impl FrobeniusSeed {
    /// Builds the seed for energy σ² at radius `r0`, with relative tail `tol`.
    pub fn new(sigma: f64, r0: f64, tol: f64) -> Result<FrobeniusSeed> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(CoulombError::domain("r0", format!("must be > 0, got {r0}")));
        }
        let c = seed_coeffs(sigma * sigma, r0, tol.max(TAIL))?;
        Ok(FrobeniusSeed { coeffs: c[1..].to_vec(), radius: r0 })
    }

    /// (φ(r₀), φ′(r₀)).
    pub fn eval(&self) -> (f64, f64) {
        let r = self.radius;
        let mut v = 0.0;
        let mut d = 0.0;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            let m = (i + 1) as f64;
            v = v * r + a;
            d = d * r + m * a;
        }
        (v * r, d)
    }
}

/// a₀ … a_N of the Frobenius series, truncated once the tail at `r0` is
/// below `tol` relative.
fn seed_coeffs<S: Scalar>(lambda: S, r0: f64, tol: f64) -> Result<Vec<S>> {
    let mut a = vec![S::zero(), S::from_f64(1.0)];
    let mut sum = r0;
    let mut pw = r0;
    let mut quiet = 0;
    for m in 0..400 {
        let mf = m as f64;
        let next = (a[m + 1] - lambda * a[m]) / ((mf + 2.0) * (mf + 1.0));
        a.push(next);
        pw *= r0;
        let term = next.modulus() * pw;
        sum = sum.max(term);
        if term <= tol * sum {
            quiet += 1;
            if quiet >= 3 {
                return Ok(a);
            }
        } else {
            quiet = 0;
        }
    }
    Err(CoulombError::Convergence { msg: format!("Frobenius seed at r0 = {r0}"), achieved: f64::NAN })
}

/// Solution state: true values are (y, dy)·e^{log_scale}.
#[derive(Debug, Clone, Copy)]
pub struct State<S> {
    pub r: f64,
    pub y: S,
    pub dy: S,
    pub log_scale: f64,
}

/// Radius where the march starts from the Frobenius seed.
pub fn seed_radius(lambda_mod: f64, r: f64) -> f64 {
    r.min(0.5 / lambda_mod.max(1.0))
}

/// Seeded state at `r0`.
pub fn seed_state<S: Scalar>(lambda: S, r0: f64) -> Result<State<S>> {
    let a = seed_coeffs(lambda, r0, TAIL)?;
    let mut v = S::zero();
    let mut d = S::zero();
    for (m, am) in a.iter().enumerate().rev() {
        v = v * r0 + *am;
        if m >= 1 {
            d = d * r0 + *am * m as f64;
        }
    }
    Ok(State { r: r0, y: v, dy: d, log_scale: 0.0 })
}

/// One Taylor step: coefficients about `st.r` and the step length used.
pub struct Step<S> {
    pub r0: f64,
    pub h: f64,
    pub a: Vec<S>,
    pub log_scale: f64,
}

impl<S: Scalar> Step<S> {
    /// Value and derivative at r0 + dx, 0 ≤ dx ≤ h (mantissas; scale unchanged).
    pub fn eval(&self, dx: f64) -> (S, S) {
        let mut v = S::zero();
        let mut d = S::zero();
        let n = self.a.len();
        for k in (0..n).rev() {
            v = v * dx + self.a[k];
            if k >= 1 {
                d = d * dx + self.a[k] * k as f64;
            }
        }
        (v, d)
    }
}

/// Taylor coefficients about r0 with step h, or None if the series tail is
/// not small enough at the requested order.
fn taylor<S: Scalar>(lambda: S, st: &State<S>, h: f64) -> Option<Vec<S>> {
    let r0 = st.r;
    let one_m = S::from_f64(1.0) - lambda * r0;
    let mut a = Vec::with_capacity(48);
    a.push(st.y);
    a.push(st.dy);
    let mut scale = st.y.modulus().max(st.dy.modulus() * h);
    let mut pw = h;
    let mut quiet = 0;
    for n in 0..MAX_ORDER {
        let nf = n as f64;
        let prev = if n >= 1 { a[n - 1] } else { S::zero() };
        let next = (one_m * a[n] - lambda * prev - a[n + 1] * (nf * (nf + 1.0))) / (r0 * (nf + 1.0) * (nf + 2.0));
        a.push(next);
        pw *= h;
        let term = next.modulus() * pw;
        scale = scale.max(term);
        if term <= TAIL * scale {
            quiet += 1;
            if quiet >= 3 {
                return Some(a);
            }
        } else {
            quiet = 0;
        }
    }
    None
}

/// Advances `st` towards `r_end` by one step and returns the step data.
pub fn step<S: Scalar>(lambda: S, st: &mut State<S>, r_end: f64) -> Result<Step<S>> {
    let r0 = st.r;
    let k_loc = (1.0 / r0 + lambda.modulus()).sqrt();
    let mut h = (0.4 * r0).min(4.0 / k_loc).min(r_end - r0);
    for _ in 0..40 {
        if let Some(a) = taylor(lambda, st, h) {
            let out = Step { r0, h, a, log_scale: st.log_scale };
            let (y, dy) = out.eval(h);
            st.r = if r_end - (r0 + h) < 1e-14 * r_end { r_end } else { r0 + h };
            st.y = y;
            st.dy = dy;
            let m = y.modulus().max(dy.modulus());
            if !(m.is_finite()) || m == 0.0 {
                return Err(CoulombError::Overflow { msg: format!("ODE march lost the solution at r = {}", st.r), log_scale: st.log_scale });
            }
            if !(1e-50..=1e50).contains(&m) {
                st.y = st.y / m;
                st.dy = st.dy / m;
                st.log_scale += m.ln();
            }
            return Ok(out);
        }
        h *= 0.5;
    }
    Err(CoulombError::Convergence { msg: format!("Taylor step underflow at r = {r0}"), achieved: h })
}

/// Regular solution at `r`: (y, dy, log_scale) with values (y, dy)·e^{log_scale}.
pub fn regular_at<S: Scalar>(lambda: S, r: f64) -> Result<State<S>> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(CoulombError::domain("r", format!("must be > 0 and finite, got {r}")));
    }
    let r0 = seed_radius(lambda.modulus(), r);
    let mut st = seed_state(lambda, r0)?;
    while st.r < r {
        step(lambda, &mut st, r)?;
    }
    Ok(st)
}

/// Regular solution sampled at increasing radii; `visit(i, y, dy, log_scale)`
/// is called for every radius in order.
pub fn regular_dense<S: Scalar>(
    lambda: S,
    radii: &[f64],
    mut visit: impl FnMut(usize, S, S, f64),
) -> Result<()> {
    if radii.is_empty() {
        return Ok(());
    }
    let first = radii[0];
    if !(first > 0.0) {
        return Err(CoulombError::domain("r", format!("radii must be > 0, got {first}")));
    }
    let r0 = seed_radius(lambda.modulus(), first);
    // Points inside the seed radius come straight from the Frobenius series.
    let seed = seed_coeffs(lambda, r0, TAIL)?;
    let mut i = 0;
    while i < radii.len() && radii[i] <= r0 {
        let r = radii[i];
        let mut v = S::zero();
        let mut d = S::zero();
        for (m, am) in seed.iter().enumerate().rev() {
            v = v * r + *am;
            if m >= 1 {
                d = d * r + *am * m as f64;
            }
        }
        visit(i, v, d, 0.0);
        i += 1;
    }
    let mut st = seed_state(lambda, r0)?;
    let last = *radii.last().unwrap();
    while i < radii.len() {
        let stp = step(lambda, &mut st, last)?;
        let end = stp.r0 + stp.h;
        while i < radii.len() && radii[i] <= end * (1.0 + 1e-15) {
            let (v, d) = stp.eval((radii[i] - stp.r0).min(stp.h));
            visit(i, v, d, stp.log_scale);
            i += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_first_coefficients() {
        let s = FrobeniusSeed::new(0.7, 0.1, 1e-16).unwrap();
        assert_eq!(s.coeffs[0], 1.0);
        assert!((s.coeffs[1] - 0.5).abs() < 1e-16);
        assert!((s.coeffs[2] - (0.5 - 0.49) / 6.0).abs() < 1e-16);
    }

    #[test]
    fn zero_energy_matches_bessel_form() {
        // λ = 0: φ = √r I₁(2√r).
        let st = regular_at(0.0f64, 3.0).unwrap();
        let x = 2.0 * 3f64.sqrt();
        let i1 = crate::specfun::bessel_i1_k1(x).unwrap().i1;
        let v = st.y * st.log_scale.exp();
        assert!((v / (3f64.sqrt() * i1) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn dense_matches_pointwise() {
        let radii: Vec<f64> = (1..40).map(|k| 0.05 * k as f64 * k as f64).collect();
        let mut dense = vec![0.0; radii.len()];
        regular_dense(4.0f64, &radii, |i, y, _, ls| dense[i] = y * ls.exp()).unwrap();
        for (r, d) in radii.iter().zip(&dense) {
            let st = regular_at(4.0f64, *r).unwrap();
            let v = st.y * st.log_scale.exp();
            assert!((v - d).abs() < 1e-11 * (1.0 + v.abs()), "r = {r}");
        }
    }
}
