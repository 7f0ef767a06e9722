//! Numerical library for boundary blow-up solutions of the p-Laplacian
//! logistic problem
//!
//! ```text
//! -div(|grad u|^(p-2) grad u) = lambda a(x) g(u) - b(x) f(u)
//! ```
//!
//! on intervals, balls and annuli (everything reduced to one spatial
//! coordinate), with `u -> +infinity` at designated boundary ends.
//!
//! The pieces:
//!
//! * [`model`] — absorption/reaction nonlinearities, boundary weight laws,
//!   monotone-ratio envelopes, growth/threshold validators.
//! * [`asymptotics`] — closed-form boundary exponents, the blow-up constant
//!   as a scalar root, and a pointwise residual oracle.
//! * [`discretization`] — graded grids, the flux-form discrete p-Laplacian,
//!   its linearization and the discrete energy.
//! * [`solver`] — damped Newton for the finite-boundary Dirichlet problem,
//!   sub/supersolution sign checks and the ordering test.
//! * [`ladder`] — the continuation driver that raises the boundary value
//!   geometrically and extracts the boundary rate.
//!
//! The numerics are generic over the scalar type via [`real::Real`];
//! `f64` aliases for the main types are exported at the crate root.

pub mod asymptotics;
pub mod discretization;
pub mod error;
pub mod ladder;
pub mod model;
pub mod real;
pub mod solver;
pub mod util;

pub use error::{CoreError, Result};
pub use real::Real;

/// `f64` alias for [`asymptotics::RatePoint`].
pub type RatePoint64 = asymptotics::RatePoint<f64>;
/// `f64` alias for [`model::NonlinearityModel`].
pub type NonlinearityModel64 = model::NonlinearityModel<f64>;
/// `f64` alias for [`model::WeightModel`].
pub type WeightModel64 = model::WeightModel<f64>;
/// `f64` alias for [`model::ProblemSpec`].
pub type ProblemSpec64 = model::ProblemSpec<f64>;
/// `f64` alias for [`model::HypothesisReport`].
pub type HypothesisReport64 = model::HypothesisReport<f64>;
/// `f64` alias for [`discretization::Grid1D`].
pub type Grid1D64 = discretization::Grid1D<f64>;
/// `f64` alias for [`discretization::Geometry`].
pub type Geometry64 = discretization::Geometry<f64>;
/// `f64` alias for [`discretization::Field`].
pub type Field64 = discretization::Field<f64>;
/// `f64` alias for [`solver::DirichletProblem`].
pub type DirichletProblem64 = solver::DirichletProblem<f64>;
/// `f64` alias for [`solver::SolveReport`].
pub type SolveReport64 = solver::SolveReport<f64>;
