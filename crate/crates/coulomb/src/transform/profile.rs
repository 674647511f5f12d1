//! Sampled radial profiles with quadrature weights, and the built-in corpus of
//! smooth compactly supported test profiles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};
use crate::quad::{gl16, pairwise_sum, uniform_panels};

/// A real function on the half line sampled at quadrature nodes.
///
/// Values are half-line amplitudes u(r) = r·g(r) of a 3D radial function g
/// (see [`RadialProfile::from_3d`]); the profile is identically zero outside
/// `support`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
    pub support: (f64, f64),
}

/// A complex function on the half line (output of propagators and the
/// functional calculus).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexProfile {
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
    pub weights: Vec<f64>,
}

/// Trapezoid weights for arbitrary increasing nodes.
pub fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![0.0; n];
    for i in 1..n {
        let h = 0.5 * (nodes[i] - nodes[i - 1]);
        w[i - 1] += h;
        w[i] += h;
    }
    w
}

fn check_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.is_empty() {
        return Err(CoulombError::Input("profile has no nodes".into()));
    }
    if nodes.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(CoulombError::Input("profile nodes must be finite and > 0".into()));
    }
    if nodes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoulombError::Input("profile nodes must be strictly increasing".into()));
    }
    Ok(())
}

impl RadialProfile {
    /// Samples `u` on `panels` equal 16-point Gauss–Legendre panels of
    /// `support = (a, b)`, 0 < a < b.
    pub fn from_fn(u: impl Fn(f64) -> f64, support: (f64, f64), panels: usize) -> Result<Self> {
        let (a, b) = support;
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(CoulombError::domain("support", format!("need 0 < a < b, got ({a}, {b})")));
        }
        let (nodes, weights) = uniform_panels(a, b, panels, gl16());
        let values = nodes.iter().map(|&r| u(r)).collect();
        Ok(RadialProfile { nodes, values, weights, support })
    }

    /// Samples a 3D radial function g and stores u = r·g.
    pub fn from_3d(g: impl Fn(f64) -> f64, support: (f64, f64), panels: usize) -> Result<Self> {
        Self::from_fn(|r| r * g(r), support, panels)
    }

    /// Profile from explicit samples with trapezoid weights; the support is
    /// the node range.
    pub fn from_samples(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_nodes(&nodes)?;
        if nodes.len() != values.len() {
            return Err(CoulombError::Input(format!("{} nodes but {} values", nodes.len(), values.len())));
        }
        let weights = trapezoid_weights(&nodes);
        let support = (nodes[0], nodes[nodes.len() - 1]);
        Ok(RadialProfile { nodes, values, weights, support })
    }

    /// Checks internal consistency (lengths, ordering, support).
    pub fn validate(&self) -> Result<()> {
        check_nodes(&self.nodes)?;
        if self.values.len() != self.nodes.len() || self.weights.len() != self.nodes.len() {
            return Err(CoulombError::Input("profile nodes/values/weights lengths differ".into()));
        }
        let (a, b) = self.support;
        if !(a > 0.0 && b >= a) || self.nodes[0] < a || *self.nodes.last().unwrap() > b {
            return Err(CoulombError::Input(format!("support ({a}, {b}) does not contain the nodes")));
        }
        Ok(())
    }

    /// ∫ u² dr.
    pub fn norm_sq(&self) -> f64 {
        let t: Vec<f64> = self.values.iter().zip(&self.weights).map(|(v, w)| w * v * v).collect();
        pairwise_sum(&t)
    }

    /// ∫ u·v dr for two profiles on the same nodes.
    pub fn dot(&self, other: &RadialProfile) -> Result<f64> {
        if self.nodes != other.nodes {
            return Err(CoulombError::Input("profiles live on different nodes".into()));
        }
        let t: Vec<f64> = self.values.iter().zip(&other.values).zip(&self.weights).map(|((a, b), w)| w * a * b).collect();
        Ok(pairwise_sum(&t))
    }

    /// ‖g‖_{L¹(ℝ³)} = 4π∫|g|r² dr = 4π∫|u|·r dr.
    pub fn l1_3d(&self) -> f64 {
        let t: Vec<f64> = self.nodes.iter().zip(&self.values).zip(&self.weights).map(|((r, u), w)| w * u.abs() * r).collect();
        4.0 * std::f64::consts::PI * pairwise_sum(&t)
    }

    /// Pointwise linear combination αu + βv on common nodes.
    pub fn combine(&self, alpha: f64, other: &RadialProfile, beta: f64) -> Result<RadialProfile> {
        if self.nodes != other.nodes {
            return Err(CoulombError::Input("profiles live on different nodes".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(RadialProfile { values, ..self.clone() })
    }

    /// u(r) by 8-point local Lagrange interpolation on the nearest nodes;
    /// zero outside the support.
    pub fn interpolate(&self, r: f64) -> f64 {
        let (a, b) = self.support;
        if !(r >= a && r <= b) {
            return 0.0;
        }
        let n = self.nodes.len();
        let m = 8.min(n);
        let i = self.nodes.partition_point(|x| *x < r);
        let start = i.saturating_sub(m / 2).min(n - m);
        let xs = &self.nodes[start..start + m];
        let ys = &self.values[start..start + m];
        let mut acc = 0.0;
        for j in 0..m {
            let mut l = 1.0;
            for k in 0..m {
                if k != j {
                    l *= (r - xs[k]) / (xs[j] - xs[k]);
                }
            }
            acc += l * ys[j];
        }
        acc
    }

    /// The same function seen at charge q: u_q(r) = √q·u(q·r) (unitary
    /// dilation), sampled at nodes r/q.
    pub fn dilate(&self, q: f64) -> RadialProfile {
        let s = q.sqrt();
        RadialProfile {
            nodes: self.nodes.iter().map(|r| r / q).collect(),
            values: self.values.iter().map(|v| s * v).collect(),
            weights: self.weights.iter().map(|w| w / q).collect(),
            support: (self.support.0 / q, self.support.1 / q),
        }
    }
}

impl ComplexProfile {
    /// ∫ |u|² dr.
    pub fn norm_sq(&self) -> f64 {
        let t: Vec<f64> = self.values.iter().zip(&self.weights).map(|(v, w)| w * v.norm_sqr()).collect();
        pairwise_sum(&t)
    }

    /// Relative L² distance ‖u − v‖/‖v‖ on common nodes (v = `reference`).
    pub fn rel_l2_error(&self, reference: &[Complex64]) -> Result<f64> {
        if reference.len() != self.values.len() {
            return Err(CoulombError::Input("length mismatch in L² comparison".into()));
        }
        let d: Vec<f64> = self.values.iter().zip(reference).zip(&self.weights).map(|((a, b), w)| w * (a - b).norm_sqr()).collect();
        let n: Vec<f64> = reference.iter().zip(&self.weights).map(|(b, w)| w * b.norm_sqr()).collect();
        Ok((pairwise_sum(&d) / pairwise_sum(&n)).sqrt())
    }

    /// max |u|/r over the nodes (the 3D sup norm of g = u/r).
    pub fn sup_3d(&self) -> f64 {
        self.nodes.iter().zip(&self.values).map(|(r, v)| v.norm() / r).fold(0.0, f64::max)
    }
}

/// Smooth bump on [a, b] with edge stiffness `k`: exp(−k·y²/(1 − y²)),
/// y = (2r − a − b)/(b − a); equal to 1 at the center.
pub fn bump(r: f64, a: f64, b: f64, k: f64) -> f64 {
    let y = (2.0 * r - a - b) / (b - a);
    if y.abs() >= 1.0 {
        0.0
    } else {
        let y2 = y * y;
        (-k * y2 / (1.0 - y2)).exp()
    }
}

/// The default decay-scan bump on [1, 2]: exp(−12y² − 3y²/(1 − y²)), y = 2r − 3.
pub fn default_bump(r: f64) -> f64 {
    let y = 2.0 * r - 3.0;
    if y.abs() >= 1.0 {
        0.0
    } else {
        let y2 = y * y;
        (-12.0 * y2 - 3.0 * y2 / (1.0 - y2)).exp()
    }
}

/// A named member of the built-in profile corpus (half-line amplitudes u).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CorpusProfile {
    /// The default bump on [1, 2].
    Bump12,
    /// Stiff-edged bump on [1, 2].
    StiffBump12,
    /// Bump on [0.5, 1.5].
    ShiftedNear,
    /// Bump on [2, 3.5].
    ShiftedFar,
    /// Wide bump on [1, 4].
    Wide,
    /// Bump on [1, 3] times cos(6r).
    WaveletCos,
    /// Bump on [1.5, 3.5] times sin(8r).
    WaveletSin,
    /// Two disjoint bumps on [1, 1.6] and [2, 2.6].
    TwoBumps,
    /// Bump on [1, 3] times (r − 2): sign-changing.
    Dipole,
    /// Bump on [1, 3] times the chirp cos(r²).
    Chirp,
}

impl CorpusProfile {
    /// The ten corpus members in a fixed order.
    pub const ALL: [CorpusProfile; 10] = [
        CorpusProfile::Bump12,
        CorpusProfile::StiffBump12,
        CorpusProfile::ShiftedNear,
        CorpusProfile::ShiftedFar,
        CorpusProfile::Wide,
        CorpusProfile::WaveletCos,
        CorpusProfile::WaveletSin,
        CorpusProfile::TwoBumps,
        CorpusProfile::Dipole,
        CorpusProfile::Chirp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusProfile::Bump12 => "bump12",
            CorpusProfile::StiffBump12 => "stiff_bump12",
            CorpusProfile::ShiftedNear => "shifted_near",
            CorpusProfile::ShiftedFar => "shifted_far",
            CorpusProfile::Wide => "wide",
            CorpusProfile::WaveletCos => "wavelet_cos",
            CorpusProfile::WaveletSin => "wavelet_sin",
            CorpusProfile::TwoBumps => "two_bumps",
            CorpusProfile::Dipole => "dipole",
            CorpusProfile::Chirp => "chirp",
        }
    }

    pub fn from_name(name: &str) -> Option<CorpusProfile> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Support interval.
    pub fn support(self) -> (f64, f64) {
        match self {
            CorpusProfile::Bump12 | CorpusProfile::StiffBump12 => (1.0, 2.0),
            CorpusProfile::ShiftedNear => (0.5, 1.5),
            CorpusProfile::ShiftedFar => (2.0, 3.5),
            CorpusProfile::Wide => (1.0, 4.0),
            CorpusProfile::WaveletCos | CorpusProfile::Dipole | CorpusProfile::Chirp => (1.0, 3.0),
            CorpusProfile::WaveletSin => (1.5, 3.5),
            CorpusProfile::TwoBumps => (1.0, 2.6),
        }
    }

    /// u(r).
    pub fn eval(self, r: f64) -> f64 {
        match self {
            CorpusProfile::Bump12 => default_bump(r),
            CorpusProfile::StiffBump12 => bump(r, 1.0, 2.0, 6.0),
            CorpusProfile::ShiftedNear => bump(r, 0.5, 1.5, 4.0),
            CorpusProfile::ShiftedFar => bump(r, 2.0, 3.5, 4.0),
            CorpusProfile::Wide => bump(r, 1.0, 4.0, 6.0),
            CorpusProfile::WaveletCos => bump(r, 1.0, 3.0, 4.0) * (6.0 * r).cos(),
            CorpusProfile::WaveletSin => bump(r, 1.5, 3.5, 4.0) * (8.0 * r).sin(),
            CorpusProfile::TwoBumps => bump(r, 1.0, 1.6, 3.0) + 0.5 * bump(r, 2.0, 2.6, 3.0),
            CorpusProfile::Dipole => bump(r, 1.0, 3.0, 4.0) * (r - 2.0),
            CorpusProfile::Chirp => bump(r, 1.0, 3.0, 4.0) * (r * r).cos(),
        }
    }

    /// Sampled profile with panels of width ≤ `panel_width`.
    pub fn sample(self, panel_width: f64) -> Result<RadialProfile> {
        let (a, b) = self.support();
        let panels = ((b - a) / panel_width).ceil().max(1.0) as usize;
        RadialProfile::from_fn(|r| self.eval(r), (a, b), panels)
    }
}
