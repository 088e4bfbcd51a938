//! Numerical machinery for entire solutions of semilinear elliptic systems
//! Δu_i = p_i(x) f_i(u_1,…,u_d) on R^N (N ≥ 3), built around the radial
//! integral-equation form of the problem:
//!
//! * radial grids and the Green operator G[g](r) = ∫₀ʳ t^{1-N} ∫₀ᵗ s^{N-1} g ds dt,
//! * coefficient/nonlinearity families with exact sphere extremizers φ, ψ,
//! * convergence/divergence checkers for the integral criteria that decide
//!   between bounded entire solutions and large (explosive) ones,
//! * monotone Picard iteration for the lower/upper envelopes, the scalar
//!   majorant, and the dominated component iteration, with proof-bound audits,
//! * an independent fixed-step shooting oracle and closed-form fixtures.
//!
//! Everything numeric is generic over the scalar type through
//! [`scalar::Real`]; `*64` aliases below pin the common f64 instantiation.

pub mod conditions;
pub mod error;
pub mod green;
pub mod grid;
pub mod oracle;
pub mod problem;
pub mod quad;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use grid::{Dimension, RadialFunction, RadialGrid, SpacingPolicy};
pub use green::{cumulative_inner, discrete_radial_laplacian, green_apply, green_derivative};
pub use problem::{
    hypothesis_audit, AuditVerdict, BigF, CoefficientFamily, HypothesisFinding, HypothesisId,
    NonlinearityFamily, ProblemSpec, TailClass,
};
pub use scalar::Real;

/// f64 instantiations of the core types.
pub type RadialGrid64 = RadialGrid<f64>;
pub type RadialFunction64 = RadialFunction<f64>;
pub type ProblemSpec64 = ProblemSpec<f64>;
pub type CoefficientFamily64 = CoefficientFamily<f64>;
pub type NonlinearityFamily64 = NonlinearityFamily<f64>;
pub type BigF64 = BigF<f64>;
