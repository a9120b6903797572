//! Solver library for the evolution equation with a variable-exponent
//! memory kernel,
//!
//! ```text
//! d/dt u(x,t) - int_0^t k(t-s) (Laplacian u)(x,s) ds = f(x,t),
//! k(t) = t^{-alpha(t)} / Gamma(1 - alpha(t)),  0 < alpha(t) < 1,
//! ```
//!
//! on tensor-product domains with homogeneous Dirichlet data. The kernel is
//! split into its constant-exponent singular part plus a mild remainder;
//! each spectral mode satisfies a Volterra integro-differential equation
//! solved either by implicit product integration or by a Mittag-Leffler
//! fixed-point iteration in an exponentially weighted norm. On top of the
//! solvers sit probes for the contraction rate, the initial-layer
//! singularity of the second time derivative, and the stability/regularity
//! ratio diagnostics.
//!
//! All numerics are generic over the scalar type via [`real::Real`];
//! concrete `f64` aliases live at the crate root.

// `!(x > 0)` style guards intentionally reject NaN; rewriting them as
// `x <= 0` would let NaN through
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// published coefficient tables carry their full printed precision
#![allow(clippy::excessive_precision)]

pub mod cheb;
pub mod conv;
pub mod error;
pub mod family;
pub mod grid;
pub mod kernel;
pub mod mode;
pub mod quad;
pub mod real;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use real::Real;

pub use grid::TimeGrid;
pub use kernel::{beta_mu, ExponentForm, ExponentFunction, SplitKernel};
pub use mode::{
    apply_picard_map, contraction_probe, picard_solve, select_sigma, singularity_probe,
    volterra_oracle_solve, weighted_norm, ContractionTable, ModeForcing, ModeProblem, ModeSolution,
    SingularityEstimate, SolverContext,
};
pub use special::{digamma, gamma, mittag_leffler, ml_kernel_weighted, MLParams};
pub use spectral::{
    eigenpairs, manufactured_forcing, project, sobolev_norm, solve_field, EigenMode, FieldForcing,
    FieldProblem, FieldSolution, InitialData, NormReport, Scheme, SpectralDomain,
};

/// Concrete `f64` instantiations of the main domain types.
pub type MLParams64 = special::MLParams<f64>;
pub type ExponentFunction64 = kernel::ExponentFunction<f64>;
pub type SplitKernel64 = kernel::SplitKernel<f64>;
pub type TimeGrid64 = grid::TimeGrid<f64>;
pub type ModeProblem64 = mode::ModeProblem<f64>;
pub type ModeSolution64 = mode::ModeSolution<f64>;
pub type SpectralDomain64 = spectral::SpectralDomain<f64>;
pub type FieldProblem64 = spectral::FieldProblem<f64>;
pub type NormReport64 = spectral::NormReport<f64>;
