//! Problem definitions shared by the wave and heat solvers.
//!
//! The model under study is the damped wave equation
//!
//! ```text
//!     u_tt - Δu + a(x) u_t = 0,      a(x) = (1 + |x|²)^(-α/2),  0 ≤ α < 1,
//! ```
//!
//! together with its companion degenerate heat equation `a(x) v_t = Δv`.
//! Everything here is radially symmetric: fields are functions of r = |x|
//! sampled on a uniform radial mesh, with the ambient dimension n carried
//! alongside so that integrals pick up the correct r^(n-1) volume factor.
//!
//! This crate holds the pieces both solvers and all diagnostics agree on:
//! the damping coefficient, the parabolic exponential weight
//! ψ(t,x) = A⟨x⟩^(2-α)/(1+t), the theoretical decay exponents, the
//! self-similar model profile, compactly supported initial data, and the
//! discrete radial operators (Laplacian, derivative, quadrature).

mod bump;
mod damping;
mod error;
mod field;
mod grid;
mod operators;
mod params;
mod profile;
mod quadrature;
mod rates;
mod weight;

pub use bump::bump_initial_data;
pub use damping::damping_coefficient;
pub use error::ModelError;
pub use field::Field;
pub use grid::RadialGrid;
pub use operators::{radial_derivative, radial_laplacian, OuterBoundary};
pub use params::{ProblemParams, WeightParams};
pub use profile::{self_similar_profile, self_similar_profile_field};
pub use quadrature::{radial_integral, sphere_surface_coefficient};
pub use rates::{theoretical_rates, RateTable};
pub use weight::{weight_psi, weight_psi_radial_gradient, weight_psi_time_derivative};
