//! Distorted Fourier analysis of the radial repulsive Coulomb Hamiltonian
//! H = −d²/dr² + q/r (q > 0) on the half line.
//!
//! * [`specfun`] — special-function kernels (log-gamma, Airy, Bessel, Kummer).
//! * [`eigenbasis`] — the generalized eigenfunctions e(σ, r) and the spectral density.
//! * [`semiclassical`] — Liouville–Green data and leading-order regime approximations.
//! * [`transform`] — forward/inverse transform, Plancherel, functional calculus, Green kernel.
//! * [`evolution`] — the propagator e^{itH}, a Crank–Nicolson oracle, decay scans, kernel probes.
//! * [`cli`] — the command-line front end used by the `coulomb` binary.

pub mod cli;
pub mod eigenbasis;
pub mod error;
pub mod evolution;
pub mod quad;
pub mod semiclassical;
pub mod specfun;
pub mod transform;

pub use eigenbasis::{Charge, EigenEval, Regime};
pub use error::{CoulombError, Result};
