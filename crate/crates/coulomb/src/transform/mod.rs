//! The distorted Fourier transform of H = −d²/dr² + q/r: forward and inverse
//! transforms of sampled radial profiles, the Plancherel check, the
//! functional calculus, the resolvent (Green) kernel, and profile I/O.
//!
//! Profiles are half-line amplitudes u = r·g of 3D radial functions g; all
//! L² statements refer to ∫|u|² dr = (4π)^{−1}‖g‖²_{L²(ℝ³)}.

mod green;
pub mod io;
mod profile;
mod spectral;

pub use green::{decaying_solution, green_apply, green_kernel, regular_solution, GreenKernel};
pub use profile::{bump, default_bump, trapezoid_weights, ComplexProfile, CorpusProfile, RadialProfile};
pub use spectral::{
    check_profile_resolution, forward_transform, functional_calculus, inverse_transform, plancherel_check,
    synthesize, PlancherelConfig, PlancherelReport, SigmaGrid, TransformedProfile, DEFAULT_SIGMA_MAX,
    NODES_PER_PERIOD,
};
