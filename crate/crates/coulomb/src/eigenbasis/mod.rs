//! The distorted Fourier basis e(σ, r) of H = −d²/dr² + q/r, its spectral
//! density and the large-r phase Θ(σ, r).
//!
//! e is normalized by ½∫₀^∞ e(σ,r) e(σ,r′) dσ = δ(r − r′) on the half line,
//! and behaves like (2/√π)·sin Θ(σ, r) as r → ∞.

mod asymptotic;
mod basis;
pub mod ode;

use serde::{Deserialize, Serialize};

use crate::error::{CoulombError, Result};

pub use asymptotic::{e_asymptotic, e_asymptotic_value, hplus, AMPLITUDE};
pub use basis::{
    e_basis, e_basis_with, e_row, log_expm1, log_mu, phi_reference, spectral_density, theta_big, PhiReference,
    Thresholds, DEFAULT_C, DEFAULT_K,
};
pub use ode::FrobeniusSeed;

/// Coulomb charge q > 0 (repulsive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Charge {
    q: f64,
}

impl Charge {
    /// The unit charge every internal routine works at.
    pub const UNIT: Charge = Charge { q: 1.0 };

    pub fn new(q: f64) -> Result<Charge> {
        if q > 0.0 && q.is_finite() {
            Ok(Charge { q })
        } else {
            Err(CoulombError::domain("q", format!("charge must be > 0 and finite, got {q}")))
        }
    }

    pub fn value(self) -> f64 {
        self.q
    }
}

impl TryFrom<f64> for Charge {
    type Error = CoulombError;
    fn try_from(q: f64) -> Result<Charge> {
        Charge::new(q)
    }
}

impl From<Charge> for f64 {
    fn from(c: Charge) -> f64 {
        c.q
    }
}

/// Which evaluation path produced an [`EigenEval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    FrobeniusOde,
    BesselLeft,
    AiryTurning,
    Oscillatory,
    LargeSigmaSeries,
    LargeSigmaContour,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::FrobeniusOde => "frobenius_ode",
            Regime::BesselLeft => "bessel_left",
            Regime::AiryTurning => "airy_turning",
            Regime::Oscillatory => "oscillatory",
            Regime::LargeSigmaSeries => "large_sigma_series",
            Regime::LargeSigmaContour => "large_sigma_contour",
        }
    }
}

/// One evaluation of e(σ, r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenEval {
    pub value: f64,
    /// ∂σ e; not computed by any current path.
    pub d_sigma: Option<f64>,
    /// ∂ᵣ e where the path provides it.
    pub d_r: Option<f64>,
    pub regime: Regime,
    pub err_est: f64,
    /// True when the value fell below the `f64` range and was flushed to 0.
    pub underflow: bool,
}

/// ρ′(σ) = 2qσ/(e^{qπ/σ} − 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensity {
    pub sigma: f64,
    pub density: f64,
}
