//! Damped-Newton solution of the finite-boundary Dirichlet problem
//!
//! ```text
//! -div(|grad u|^(p-2) grad u) = lambda a(x) g(u) - b(x) f(u),   u = L on the boundary,
//! ```
//!
//! plus the sub/supersolution sign checks and the nodewise ordering test
//! that certify the monotone continuation.

mod newton;

pub use newton::{default_init, solve_dirichlet, torsion_minimum};

use std::sync::Arc;

use crate::discretization::{p_lap_residual, EndCondition, Field, Grid1D};
use crate::error::{CoreError, Result};
use crate::model::{NonlinearityModel, WeightModel};
use crate::real::{cast, unit_floor, Real};

/// One truncated Dirichlet problem.
#[derive(Debug, Clone)]
pub struct DirichletProblem<T> {
    pub grid: Arc<Grid1D<T>>,
    pub p: T,
    pub lambda: T,
    pub weight_a: WeightModel<T>,
    pub weight_b: WeightModel<T>,
    /// Absorption nonlinearity `f`.
    pub absorption: NonlinearityModel<T>,
    /// Reaction nonlinearity `g`.
    pub reaction: NonlinearityModel<T>,
    /// Per-endpoint boundary data; distinct values are allowed, and zero is
    /// admitted for pure-absorption barrier problems.
    pub boundary: [EndCondition<T>; 2],
    /// Values below this are never fed to the nonlinearities (the computable
    /// stand-in for the solution's positive lower bound).
    pub positivity_floor: T,
}

impl<T: Real> DirichletProblem<T> {
    /// Whether the reaction term is identically absent.
    pub fn pure_absorption(&self) -> bool {
        self.lambda == T::zero()
            || (self.weight_a.coeff == T::zero() && self.weight_a.offset == T::zero())
    }

    /// Basic consistency checks; zero boundary data or a zero floor demand a
    /// pure-absorption problem.
    pub fn check(&self) -> Result<()> {
        if !(self.p > T::one()) {
            return Err(CoreError::InvalidModel("p must exceed 1".into()));
        }
        if self.lambda < T::zero() {
            return Err(CoreError::InvalidModel("lambda must be nonnegative".into()));
        }
        if self.positivity_floor < T::zero() {
            return Err(CoreError::InvalidModel(
                "positivity floor must be nonnegative".into(),
            ));
        }
        let zero_data = self
            .boundary
            .iter()
            .any(|b| matches!(b, EndCondition::Dirichlet(v) if *v == T::zero()));
        if (zero_data || self.positivity_floor == T::zero()) && !self.pure_absorption() {
            return Err(CoreError::InvalidModel(
                "zero boundary data or zero floor require a pure-absorption problem".into(),
            ));
        }
        Ok(())
    }

    /// Effective clamping floor (kept strictly positive so fields stay
    /// valid).
    pub(crate) fn floor_eff(&self) -> T {
        self.positivity_floor.max(T::min_positive_value())
    }

    /// Right-hand side `lambda a(d) g(t) - b(d) f(t)` at distance `d`.
    pub fn rhs_at(&self, d: T, t: T) -> Result<T> {
        let b = self.weight_b.eval(d)?;
        let f = self.absorption.eval(t)?;
        let reaction = if self.pure_absorption() {
            T::zero()
        } else {
            self.lambda * self.weight_a.eval(d)? * self.reaction.eval(t)?
        };
        Ok(reaction - b * f)
    }

    /// Derivative of the right-hand side in `t`.
    pub fn rhs_derivative_at(&self, d: T, t: T) -> Result<T> {
        let b = self.weight_b.eval(d)?;
        let fd = self.absorption.derivative(t)?;
        let reaction = if self.pure_absorption() {
            T::zero()
        } else {
            self.lambda * self.weight_a.eval(d)? * self.reaction.derivative(t)?
        };
        Ok(reaction - b * fd)
    }
}

/// Per-node sub/supersolution bracket for the truncated right-hand side.
#[derive(Debug, Clone)]
pub struct Bracket<T> {
    pub lower: Vec<T>,
    pub upper: Vec<T>,
}

/// The truncated right-hand side: `t` is clamped into
/// `[sub_value, super_value]` before the nonlinearities are evaluated, so
/// the function is constant in `t` outside the bracket.
pub fn truncated_rhs<T: Real>(
    x_distance: T,
    t: T,
    sub_value: T,
    super_value: T,
    problem: &DirichletProblem<T>,
) -> Result<T> {
    let tau = t.max(sub_value).min(super_value).max(problem.floor_eff());
    problem.rhs_at(x_distance, tau)
}

/// Solver knobs; the defaults match the acceptance configurations.
#[derive(Debug, Clone)]
pub struct SolveOpts<T> {
    /// Convergence tolerance relative to `max(1, |rhs at init|_inf)`.
    pub tol_rel: T,
    pub max_iterations: usize,
    pub max_backtracks: usize,
    pub backtrack_factor: T,
    /// Use the discrete energy as line-search merit (residual-norm decrease
    /// is always required as well; disabling skips the quadrature of `H`).
    pub energy_merit: bool,
    /// Truncation bracket; when present the right-hand side is clamped and
    /// accepted iterates are clamped into the bracket.
    pub bracket: Option<Bracket<T>>,
}

impl<T: Real> Default for SolveOpts<T> {
    fn default() -> Self {
        Self {
            tol_rel: cast(1e-10),
            max_iterations: 80,
            max_backtracks: 40,
            backtrack_factor: cast(0.5),
            energy_merit: true,
            bracket: None,
        }
    }
}

/// Trace of one nonlinear solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<T> {
    pub converged: bool,
    pub iterations: usize,
    /// Max-norm of the residual at the initial guess and after every
    /// accepted step; strictly decreasing.
    pub residual_norms: Vec<T>,
    pub damping_factors: Vec<T>,
    pub energy_trace: Vec<T>,
    pub floor_activations: usize,
    /// Effective absolute tolerance the final residual was compared
    /// against: the requested `tol_rel * scale`, raised to the scheme's
    /// one-ULP resolution floor on strongly graded grids.
    pub tol: T,
}

/// Role in a sub/supersolution check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Sub,
    Super,
}

/// Signs the residual of `candidate` against the untruncated right-hand
/// side: a subsolution must have `residual <= tol` everywhere with boundary
/// data at or below the problem's, a supersolution the mirror image.
/// Returns `(ok, worst_violation)`.
pub fn check_sub_super<T: Real>(
    candidate: &Field<T>,
    problem: &DirichletProblem<T>,
    role: Role,
) -> Result<(bool, T)> {
    let d = candidate.grid().distance();
    let floor = problem.floor_eff();
    let mut rhs = Vec::with_capacity(d.len());
    for (i, &u) in candidate.values().iter().enumerate() {
        rhs.push(problem.rhs_at(d[i], u.max(floor))?);
    }
    let scale = rhs.iter().fold(T::one(), |a, &b| a.max(b.abs()));
    let tol_sign = cast::<T>(1e-8) * scale;
    let res = p_lap_residual(candidate, problem.p, &rhs)?;

    let mut worst = T::neg_infinity();
    for &r in &res {
        let v = match role {
            Role::Sub => r,
            Role::Super => -r,
        };
        worst = worst.max(v);
    }
    // boundary ordering enters with the candidate's own data
    for (side, b) in candidate.boundary().iter().enumerate() {
        let (Some(cand), Some(prob)) = (
            b.dirichlet_value(),
            problem.boundary[side].dirichlet_value(),
        ) else {
            continue;
        };
        let v = match role {
            Role::Sub => cand - prob,
            Role::Super => prob - cand,
        };
        worst = worst.max(v);
    }
    Ok((worst <= tol_sign, worst))
}

/// Nodewise ordering `upper >= lower - tol` (with boundary data included),
/// the discrete mirror of the comparison principle.
pub fn ordering_test<T: Real>(upper: &Field<T>, lower: &Field<T>) -> Result<bool> {
    Ok(ordering_slack(upper, lower)? >= -default_order_tol(lower))
}

/// `min(upper - lower)` over nodes and Dirichlet ends.
pub fn ordering_slack<T: Real>(upper: &Field<T>, lower: &Field<T>) -> Result<T> {
    if upper.grid().nodes() != lower.grid().nodes() {
        return Err(CoreError::InvalidField(
            "ordering test requires a shared grid".into(),
        ));
    }
    let mut slack = T::infinity();
    for (a, b) in upper.values().iter().zip(lower.values()) {
        slack = slack.min(*a - *b);
    }
    for (a, b) in upper.boundary().iter().zip(lower.boundary()) {
        if let (Some(va), Some(vb)) = (a.dirichlet_value(), b.dirichlet_value()) {
            slack = slack.min(va - vb);
        }
    }
    Ok(slack)
}

pub(crate) fn default_order_tol<T: Real>(reference: &Field<T>) -> T {
    let scale = reference
        .values()
        .iter()
        .fold(T::one(), |a, &b| a.max(b.abs()));
    cast::<T>(1e-6) * scale
}

/// `<|a|^(p-2) a - |b|^(p-2) b, a - b>` for vectors of any (small)
/// dimension: nonnegative, zero only at `a = b`. The discrete heart of the
/// strict monotonicity of the operator.
pub fn monotone_pairing<T: Real>(a: &[T], b: &[T], p: T) -> T {
    assert_eq!(a.len(), b.len());
    let norm = |v: &[T]| v.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let na = norm(a).powf(p - cast::<T>(2.0));
    let nb = norm(b).powf(p - cast::<T>(2.0));
    let mut dot = T::zero();
    for i in 0..a.len() {
        let fa = if a[i] == T::zero() && na.is_infinite() {
            T::zero()
        } else {
            na * a[i]
        };
        let fb = if b[i] == T::zero() && nb.is_infinite() {
            T::zero()
        } else {
            nb * b[i]
        };
        dot += (fa - fb) * (a[i] - b[i]);
    }
    dot
}

/// Scale used by solver tolerances: `max(1, |rhs at init|_inf)`.
pub(crate) fn rhs_scale<T: Real>(problem: &DirichletProblem<T>, init: &Field<T>) -> Result<T> {
    let d = init.grid().distance();
    let floor = problem.floor_eff();
    let mut scale = T::one();
    for (i, &u) in init.values().iter().enumerate() {
        scale = unit_floor(problem.rhs_at(d[i], u.max(floor))?).max(scale);
    }
    Ok(scale)
}
