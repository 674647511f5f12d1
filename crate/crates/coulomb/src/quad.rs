//! Quadrature building blocks: composite Gauss–Legendre panels, a doubly
//! exponential rule on the half line, and deterministic summation.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{CoulombError, Result};

/// Gauss–Legendre rule on the reference interval [-1, 1], nodes ascending.
#[derive(Debug, Clone)]
pub struct GlRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GlRule {
    /// Builds an `n`-point rule.
    pub fn new(n: usize) -> Self {
        let n = NonZeroUsize::new(n.max(1)).expect("non-zero");
        let mut pairs: Vec<(f64, f64)> = GaussLegendre::new(n).as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        GlRule {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    /// Number of points of the rule.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True for the (never constructed) empty rule.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Maps the rule to [a, b], appending nodes and weights.
    pub fn push_panel(&self, a: f64, b: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
}

/// Shared 16-point rule (the workhorse panel rule).
pub fn gl16() -> &'static GlRule {
    static RULE: OnceLock<GlRule> = OnceLock::new();
    RULE.get_or_init(|| GlRule::new(16))
}

/// Shared 32-point rule (used for error estimates against `gl16`).
pub fn gl32() -> &'static GlRule {
    static RULE: OnceLock<GlRule> = OnceLock::new();
    RULE.get_or_init(|| GlRule::new(32))
}

/// Composite rule over the given increasing breakpoints.
pub fn composite(breaks: &[f64], rule: &GlRule) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(breaks.len().saturating_sub(1) * rule.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for w in breaks.windows(2) {
        rule.push_panel(w[0], w[1], &mut nodes, &mut weights);
    }
    (nodes, weights)
}

/// Composite rule with `panels` equal panels on [a, b].
pub fn uniform_panels(a: f64, b: f64, panels: usize, rule: &GlRule) -> (Vec<f64>, Vec<f64>) {
    let panels = panels.max(1);
    let breaks: Vec<f64> = (0..=panels)
        .map(|i| a + (b - a) * i as f64 / panels as f64)
        .collect();
    composite(&breaks, rule)
}

/// Pairwise (tree) summation with a fixed topology: the result depends only
/// on the input order, never on scheduling.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Complex counterpart of [`pairwise_sum`].
pub fn pairwise_sum_c(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_c(&xs[..mid]) + pairwise_sum_c(&xs[mid..])
}

/// Integrates `f` over (0, ∞) with the exp-sinh rule
/// `u = exp(π/2 · sinh t)`, halving the step until two successive levels agree.
///
/// `f` must decay at least exponentially at infinity and be integrable at 0.
/// Returns the value and the last level difference.
pub fn exp_sinh<F>(f: F, tol: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let half_pi = std::f64::consts::FRAC_PI_2;
    let term = |t: f64| -> Complex64 {
        let s = half_pi * t.sinh();
        let u = s.exp();
        if u == 0.0 || !u.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let v = f(u);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        v * (half_pi * t.cosh() * u)
    };
    // Sum over t = k·h in both directions until terms are negligible.
    let sweep = |offset: f64, step: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for dir in [1.0, -1.0] {
            let mut k = 0usize;
            let mut small = 0usize;
            loop {
                let t = dir * (offset + k as f64 * step);
                if dir < 0.0 && offset == 0.0 && k == 0 {
                    k += 1;
                    continue;
                }
                let v = term(t);
                acc += v;
                let mag = v.norm();
                if mag <= 1e-20 * acc.norm().max(1e-300) || t.abs() > 6.5 {
                    small += 1;
                    if small >= 3 {
                        break;
                    }
                } else {
                    small = 0;
                }
                k += 1;
            }
        }
        acc
    };
    let mut h = 0.5;
    let mut sum = sweep(0.0, h); // raw sum of terms on the level-0 grid
    let mut value = sum * h;
    let mut diff = f64::INFINITY;
    for _ in 0..10 {
        // New midpoints.
        let mid = sweep(0.5 * h, h);
        sum += mid;
        h *= 0.5;
        let next = sum * h;
        diff = (next - value).norm();
        value = next;
        if diff <= tol * value.norm().max(1e-300) {
            return Ok((value, diff));
        }
    }
    if diff <= 1e3 * tol * value.norm().max(1e-300) {
        return Ok((value, diff));
    }
    Err(CoulombError::Convergence {
        msg: "exp-sinh quadrature on (0, inf)".into(),
        achieved: diff / value.norm().max(1e-300),
    })
}
