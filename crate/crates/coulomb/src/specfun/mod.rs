//! Self-contained real and complex special-function kernels: log-gamma,
//! the Coulomb phase θ(σ), Airy and modified Bessel pairs, and Kummer's M.

pub mod airy;
pub mod bessel;
pub mod gamma;
pub mod kummer;

pub use airy::{airy_pair, airy_scaled, AiryPair, AiryScaled};
pub use bessel::{bessel_i1_k1, bessel_scaled, BesselI1K1, BesselScaled};
pub use gamma::{gamma_one_plus_iy, log_gamma, theta_phase, theta_phase_stirling, GammaPolar};
pub use kummer::{kummer_laplace_split, kummer_m_series, LaplaceSplit, SplitOptions};

/// Complex intermediate values. NaN is never a legitimate value: operations
/// report errors instead.
pub type ComplexVal = num_complex::Complex64;
