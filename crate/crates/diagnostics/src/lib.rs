//! Measurement layer for the damped-wave laboratory.
//!
//! Everything the verification harness quantifies lives here:
//!
//! - radial L² norms and tail norms (`l2_norm`, `mass_outside`);
//! - integrals against the exponential weight e^(2ψ), including the
//!   cumulative data norms I_k and the trajectory energy functionals
//!   (`weighted_integral`, `initial_norms`, `energy_functionals`);
//! - power-law decay fitting on sampled curves (`DecaySeries`,
//!   `fit_decay_rate`);
//! - mass in the outer parabolic region, whose exponential smallness
//!   justifies finite domains (`region_mass`);
//! - the two wave-heat comparison quantities: the Duhamel representation
//!   residual and the diffusion-profile distance (`duhamel_residual`,
//!   `profile_difference`).
//!
//! All integrals are radial with the ω_n r^(n-1) volume factor and the
//! composite trapezoid rule, matching the solvers' grids. All functions
//! are pure; nothing here mutates a solver state.

mod duhamel;
mod energy;
mod error;
mod integrals;
mod profile;
mod region;
mod series;

pub use duhamel::{
    duhamel_residual, duhamel_sample_times, DuhamelConfig, MIN_QUADRATURE_NODES,
};
pub use energy::{energy_functionals, EnergyFunctionals};
pub use error::DiagnosticsError;
pub use integrals::{initial_norms, l2_norm, mass_outside, weighted_integral};
pub use profile::{profile_difference, HeatRunConfig};
pub use region::{region_mass, region_threshold_radius, ParabolicRegionSpec};
pub use series::{fit_decay_rate, DecaySeries, FitResult, MIN_FIT_SAMPLES};
