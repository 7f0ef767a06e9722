//! Newton iteration with backtracking line search.
//!
//! The merit function is the discrete energy of the truncated problem (its
//! minimizer is the solution we are after); a residual-norm decrease is
//! required in every accepted step, which keeps the report's norm trace
//! strictly decreasing. If no step satisfies both, the energy condition is
//! dropped for that iteration.

use std::sync::Arc;

use crate::discretization::{
    discrete_energy, jacobian, p_lap_residual, EndCondition, Field, Geometry, Grid1D,
};
use crate::error::{CoreError, Result};
use crate::model::{NonlinearityForm, NonlinearityKind, NonlinearityModel, WeightModel};
use crate::real::{cast, Real};
use crate::solver::{rhs_scale, DirichletProblem, SolveOpts, SolveReport};
use crate::util::adaptive_simpson;

/// Default initial guess: the constant field at the largest boundary value
/// (or the floor when all boundary data vanish).
pub fn default_init<T: Real>(problem: &DirichletProblem<T>) -> Result<Field<T>> {
    let value = problem
        .boundary
        .iter()
        .filter_map(|b| b.dirichlet_value())
        .fold(T::zero(), |a, b| a.max(b))
        .max(problem.floor_eff());
    let n = problem.grid.n_nodes();
    Field::new(problem.grid.clone(), vec![value; n], problem.boundary)
}

/// Integral of the model between `a` and `b > a`; closed form for power
/// laws, adaptive quadrature for tables.
fn model_integral<T: Real>(model: &NonlinearityModel<T>, a: T, b: T) -> T {
    if b <= a {
        return T::zero();
    }
    match model.form() {
        NonlinearityForm::Power => {
            let c = model.asympt_coeff();
            let e = model.exponent();
            if c == T::zero() {
                return T::zero();
            }
            if (e + T::one()).abs() < cast(1e-12) {
                c * (b / a).ln()
            } else {
                c * (b.powf(e + T::one()) - a.powf(e + T::one())) / (e + T::one())
            }
        }
        NonlinearityForm::Tabulated { .. } => {
            let f = |s: T| model.eval(s).unwrap_or_else(|_| T::nan());
            adaptive_simpson(&f, a, b, cast::<T>(1e-12) * (b - a))
        }
    }
}

/// Clamp state shared by the residual, Jacobian and energy evaluations.
struct Truncation<'a, T> {
    problem: &'a DirichletProblem<T>,
    lower: Option<&'a [T]>,
    upper: Option<&'a [T]>,
}

impl<'a, T: Real> Truncation<'a, T> {
    fn clamp(&self, i: usize, t: T) -> T {
        let mut tau = t;
        if let Some(lo) = self.lower {
            tau = tau.max(lo[i]);
        }
        if let Some(hi) = self.upper {
            tau = tau.min(hi[i]);
        }
        tau.max(self.problem.floor_eff())
    }

    fn active(&self, i: usize, t: T) -> bool {
        self.clamp(i, t) != t
    }

    fn rhs(&self, i: usize, d: T, t: T) -> Result<T> {
        self.problem.rhs_at(d, self.clamp(i, t))
    }

    fn rhs_derivative(&self, i: usize, d: T, t: T) -> Result<T> {
        if self.active(i, t) {
            Ok(T::zero())
        } else {
            self.problem.rhs_derivative_at(d, t)
        }
    }

    /// `H(t) = int_0^t rhs(clamp(tau)) dtau` at node `i`, distance `d`.
    fn antiderivative(&self, i: usize, d: T, t: T) -> Result<T> {
        let lo = self.clamp(i, T::min_positive_value());
        let hi_opt = self.upper.map(|u| u[i]);
        let mut h = self.problem.rhs_at(d, lo)? * t.min(lo);
        if t <= lo {
            return Ok(h);
        }
        let mid_top = match hi_opt {
            Some(hi) => t.min(hi),
            None => t,
        };
        // integral of the raw rhs between lo and mid_top
        let b = self.problem.weight_b.eval(d)?;
        let mut mid = -b * model_integral(&self.problem.absorption, lo, mid_top);
        if !self.problem.pure_absorption() {
            mid = mid
                + self.problem.lambda
                    * self.problem.weight_a.eval(d)?
                    * model_integral(&self.problem.reaction, lo, mid_top);
        }
        h += mid;
        if let Some(hi) = hi_opt {
            if t > hi {
                h += self.problem.rhs_at(d, hi)? * (t - hi);
            }
        }
        Ok(h)
    }
}

fn max_norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &b| a.max(b.abs()))
}

/// A flat iterate (no gradient anywhere) makes the regularized flux law
/// degenerate for `p != 2`; such starts are seeded through `p = 2`.
fn is_flat<T: Real>(init: &Field<T>) -> bool {
    let grid = init.grid();
    let x = grid.nodes();
    let (lo, hi) = grid.geometry().endpoints();
    let u = init.values();
    let umax = u.iter().fold(T::one(), |a, &b| a.max(b.abs()));
    let mut du_max = T::zero();
    let mut prev_pos = lo;
    let mut prev_val = match init.boundary()[0] {
        crate::discretization::EndCondition::Dirichlet(v) => v,
        crate::discretization::EndCondition::Symmetry => u[0],
    };
    for (i, &xi) in x.iter().enumerate() {
        du_max = du_max.max(((u[i] - prev_val) / (xi - prev_pos)).abs());
        prev_pos = xi;
        prev_val = u[i];
    }
    if let crate::discretization::EndCondition::Dirichlet(v) = init.boundary()[1] {
        du_max = du_max.max(((v - prev_val) / (hi - prev_pos)).abs());
    }
    du_max * (hi - lo) <= cast::<T>(1e-6) * umax
}

/// The p-stages used to walk a flat start from the linear operator to the
/// target exponent, final value excluded.
fn seed_stages<T: Real>(p: T) -> Vec<T> {
    let two = cast::<T>(2.0);
    let mut stages = vec![two];
    let step = if p > two { T::one() } else { -T::one() };
    let mut cur = two;
    while (p - cur).abs() > T::one() {
        cur += step;
        stages.push(cur);
    }
    stages
}

/// Solves the truncated Dirichlet problem by damped Newton.
///
/// Divergence (iteration budget exhausted) is reported, not raised; a
/// non-finite residual raises [`CoreError::IterateBlowUp`]. Flat initial
/// guesses with `p != 2` are first seeded by solving the same problem with
/// the linear operator (and intermediate exponents for distant `p`); the
/// report traces only the final-stage iteration.
pub fn solve_dirichlet<T: Real>(
    problem: &DirichletProblem<T>,
    init: &Field<T>,
    opts: &SolveOpts<T>,
) -> Result<(Field<T>, SolveReport<T>)> {
    problem.check()?;
    if init.grid().nodes() != problem.grid.nodes() {
        return Err(CoreError::InvalidField(
            "initial guess lives on a different grid".into(),
        ));
    }
    let two = cast::<T>(2.0);
    let mut work = init.values().to_vec();
    if problem.p != two && is_flat(init) {
        let seed_opts = SolveOpts {
            tol_rel: opts.tol_rel.max(cast(1e-6)),
            energy_merit: false,
            bracket: opts.bracket.clone(),
            ..*opts
        };
        for p_stage in seed_stages(problem.p) {
            match newton_core(problem, p_stage, &work, &seed_opts) {
                Ok((seeded, _)) => work = seeded,
                Err(_) => break, // best effort: fall back to the last iterate
            }
        }
    }
    let (values, report) = newton_core(problem, problem.p, &work, opts)?;
    let field = Field::new(problem.grid.clone(), values, problem.boundary)?;
    Ok((field, report))
}

/// One Newton loop at operator exponent `p_op` from `start` values.
fn newton_core<T: Real>(
    problem: &DirichletProblem<T>,
    p_op: T,
    start: &[T],
    opts: &SolveOpts<T>,
) -> Result<(Vec<T>, SolveReport<T>)> {
    let grid = &problem.grid;
    let n = grid.n_nodes();
    let d = grid.distance();
    let trunc = Truncation {
        problem,
        lower: opts.bracket.as_ref().map(|b| b.lower.as_slice()),
        upper: opts.bracket.as_ref().map(|b| b.upper.as_slice()),
    };

    let mut floor_activations = 0usize;
    let mut clamp_into = |vals: &mut [T]| {
        for (i, v) in vals.iter_mut().enumerate() {
            let c = trunc.clamp(i, *v);
            if c != *v {
                floor_activations += 1;
                *v = c;
            }
        }
    };

    let mut u = start.to_vec();
    clamp_into(&mut u);
    let field = |vals: Vec<T>| Field::new(grid.clone(), vals, problem.boundary);
    let init_field = field(u.clone())?;
    let scale = rhs_scale(problem, &init_field)?;
    let tol = opts.tol_rel * scale;

    // distances used for the energy quadrature's boundary strips
    let (lo_pos, hi_pos) = grid.geometry().endpoints();
    let quarter = cast::<T>(0.25);
    let mut d_energy = Vec::with_capacity(n + 2);
    d_energy.push(
        grid.geometry()
            .distance(lo_pos + (grid.nodes()[0] - lo_pos) * quarter),
    );
    d_energy.extend_from_slice(d);
    d_energy.push(
        grid.geometry()
            .distance(hi_pos - (hi_pos - grid.nodes()[n - 1]) * quarter),
    );

    let residual_of = |vals: &[T]| -> Result<(Vec<T>, Field<T>)> {
        let f = field(vals.to_vec())?;
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            rhs.push(trunc.rhs(i, d[i], vals[i])?);
        }
        Ok((p_lap_residual(&f, p_op, &rhs)?, f))
    };
    let energy_of = |f: &Field<T>| -> Result<T> {
        let h_at = |chain: usize, t: T| -> T {
            let i = chain.saturating_sub(1).min(n - 1);
            trunc
                .antiderivative(i, d_energy[chain], t)
                .unwrap_or_else(|_| T::nan())
        };
        discrete_energy(f, p_op, &h_at)
    };

    let (mut res, mut cur_field) = residual_of(&u)?;
    let mut norm = max_norm(&res);
    if !norm.is_finite() {
        return Err(CoreError::IterateBlowUp);
    }
    let mut energy = if opts.energy_merit {
        energy_of(&cur_field)?
    } else {
        T::zero()
    };

    let mut report = SolveReport {
        converged: false,
        iterations: 0,
        residual_norms: vec![norm],
        damping_factors: Vec::new(),
        energy_trace: if opts.energy_merit { vec![energy] } else { Vec::new() },
        floor_activations: 0,
        tol,
    };

    for iter in 0..opts.max_iterations {
        let mut rhs_d = Vec::with_capacity(n);
        for i in 0..n {
            rhs_d.push(trunc.rhs_derivative(i, d[i], u[i])?);
        }
        let jac = jacobian(&cur_field, p_op, &rhs_d)?;

        // Residuals below the one-ULP response of the scheme are zero at
        // machine resolution; on strongly graded grids this floor can sit
        // above the requested tolerance.
        let mut relief = T::zero();
        for i in 0..n {
            relief = relief.max(jac.diag[i].abs() * u[i].abs().max(T::one()));
        }
        relief = relief * T::epsilon() * cast::<T>(4.0);
        report.tol = tol.max(relief);
        if norm <= report.tol {
            report.converged = true;
            break;
        }
        report.iterations = iter + 1;

        let neg: Vec<T> = res.iter().map(|&r| -r).collect();
        let step = jac.solve(&neg)?;

        // backtracking: residual decrease required, energy decrease
        // preferred; fall back to residual-only if energy never drops.
        let mut alpha = T::one();
        let mut accepted: Option<(Vec<T>, Vec<T>, Field<T>, T, T, T)> = None;
        let mut fallback: Option<(Vec<T>, Vec<T>, Field<T>, T, T, T)> = None;
        for _ in 0..opts.max_backtracks {
            let mut trial: Vec<T> = u
                .iter()
                .zip(&step)
                .map(|(&v, &s)| v + alpha * s)
                .collect();
            clamp_into(&mut trial);
            if let Ok((tres, tfield)) = residual_of(&trial) {
                let tnorm = max_norm(&tres);
                if tnorm.is_finite()
                    && tnorm < norm * (T::one() - cast::<T>(1e-4) * alpha)
                {
                    if opts.energy_merit {
                        let tenergy = energy_of(&tfield)?;
                        if tenergy.is_finite() && tenergy < energy {
                            accepted = Some((trial, tres, tfield, tnorm, tenergy, alpha));
                            break;
                        }
                        if fallback.is_none() {
                            fallback = Some((
                                trial.clone(),
                                tres.clone(),
                                tfield.clone(),
                                tnorm,
                                tenergy,
                                alpha,
                            ));
                        }
                    } else {
                        accepted = Some((trial, tres, tfield, tnorm, T::zero(), alpha));
                        break;
                    }
                }
            }
            alpha = alpha * opts.backtrack_factor;
        }
        let Some((next, nres, nfield, nnorm, nenergy, used_alpha)) = accepted.or(fallback)
        else {
            // stalled line search: report divergence
            break;
        };
        u = next;
        res = nres;
        cur_field = nfield;
        norm = nnorm;
        energy = nenergy;
        report.residual_norms.push(norm);
        report.damping_factors.push(used_alpha);
        if opts.energy_merit {
            report.energy_trace.push(energy);
        }
        if !norm.is_finite() {
            return Err(CoreError::IterateBlowUp);
        }
    }
    if norm <= report.tol {
        report.converged = true;
    }
    report.floor_activations = floor_activations;
    let _ = cur_field;
    Ok((u, report))
}

/// Solves the torsion-like floor problem `div(|grad w|^(p-2) grad w) =
/// w^(p-1)`, `w = 1` on the boundary, and returns its interior minimum
/// together with the solved field.
pub fn torsion_minimum<T: Real>(
    p: T,
    geometry: Geometry<T>,
    n_cells: usize,
    opts: &SolveOpts<T>,
) -> Result<(T, Field<T>)> {
    let grid = Arc::new(crate::discretization::build_grid(geometry, n_cells, T::one())?);
    let problem = torsion_problem(p, grid)?;
    let init = default_init(&problem)?;
    let (field, report) = solve_dirichlet(&problem, &init, opts)?;
    if !report.converged {
        return Err(CoreError::IterateBlowUp);
    }
    let w0 = field
        .values()
        .iter()
        .fold(T::infinity(), |a, &b| a.min(b));
    Ok((w0, field))
}

/// The torsion-like problem as a pure-absorption [`DirichletProblem`].
pub(crate) fn torsion_problem<T: Real>(
    p: T,
    grid: Arc<Grid1D<T>>,
) -> Result<DirichletProblem<T>> {
    let left = if grid.has_origin() {
        EndCondition::Symmetry
    } else {
        EndCondition::Dirichlet(T::one())
    };
    Ok(DirichletProblem {
        grid,
        p,
        lambda: T::zero(),
        weight_a: WeightModel::constant(T::zero())?,
        weight_b: WeightModel::constant(T::one())?,
        absorption: NonlinearityModel::power(
            NonlinearityKind::AbsorptionF,
            p - T::one(),
            T::one(),
        )?,
        reaction: NonlinearityModel::power(NonlinearityKind::ReactionG, T::zero(), T::zero())?,
        boundary: [left, EndCondition::Dirichlet(T::one())],
        positivity_floor: cast(1e-10),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::{build_grid, BlowUpEnds};
    use crate::solver::{check_sub_super, ordering_test, Role};
    use approx::assert_relative_eq;

    fn interval(lo: f64, hi: f64, n: usize, ratio: f64) -> Arc<Grid1D<f64>> {
        Arc::new(
            build_grid(
                Geometry::Interval {
                    lo,
                    hi,
                    blow_up: BlowUpEnds::Both,
                },
                n,
                ratio,
            )
            .unwrap(),
        )
    }

    fn absorption_problem(
        grid: Arc<Grid1D<f64>>,
        p: f64,
        q: f64,
        boundary: f64,
    ) -> DirichletProblem<f64> {
        DirichletProblem {
            grid,
            p,
            lambda: 0.0,
            weight_a: WeightModel::constant(0.0).unwrap(),
            weight_b: WeightModel::constant(1.0).unwrap(),
            absorption: NonlinearityModel::power(NonlinearityKind::AbsorptionF, q, 1.0).unwrap(),
            reaction: NonlinearityModel::power(NonlinearityKind::ReactionG, 0.0, 0.0).unwrap(),
            boundary: [
                EndCondition::Dirichlet(boundary),
                EndCondition::Dirichlet(boundary),
            ],
            positivity_floor: 1e-8 * boundary,
        }
    }

    #[test]
    fn zero_rhs_converges_to_constant_in_one_step() {
        let grid = interval(0.0, 1.0, 16, 1.0);
        let mut problem = absorption_problem(grid.clone(), 2.0, 3.0, 5.0);
        problem.weight_b = WeightModel::constant(0.0).unwrap();
        let init = Field::new(grid, vec![2.5; 15], problem.boundary).unwrap();
        let (u, report) = solve_dirichlet(&problem, &init, &SolveOpts::default()).unwrap();
        assert!(report.converged);
        assert!(report.iterations <= 1, "iterations {}", report.iterations);
        for &v in u.values() {
            assert_relative_eq!(v, 5.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn linear_absorption_matches_cosh_profile() {
        // u'' = u on (-1, 1), u(+-1) = 1: u = cosh(x)/cosh(1).
        let grid = interval(-1.0, 1.0, 512, 1.0);
        let problem = absorption_problem(grid.clone(), 2.0, 1.0, 1.0);
        let init = default_init(&problem).unwrap();
        let (u, report) = solve_dirichlet(&problem, &init, &SolveOpts::default()).unwrap();
        assert!(report.converged);
        let c = 1.0f64.cosh();
        for (x, v) in grid.nodes().iter().zip(u.values()) {
            assert!((v - x.cosh() / c).abs() < 1e-4, "x={x}, v={v}");
        }
    }

    #[test]
    fn residual_norms_strictly_decrease() {
        let grid = interval(0.0, 2.0, 128, 0.9);
        let problem = absorption_problem(grid, 2.0, 3.0, 10.0);
        let init = default_init(&problem).unwrap();
        let (_, report) = solve_dirichlet(&problem, &init, &SolveOpts::default()).unwrap();
        assert!(report.converged);
        for w in report.residual_norms.windows(2) {
            assert!(w[1] < w[0]);
        }
        // determinism: identical problem and opts give identical traces
        let problem2 = absorption_problem(interval(0.0, 2.0, 128, 0.9), 2.0, 3.0, 10.0);
        let init2 = default_init(&problem2).unwrap();
        let (_, report2) = solve_dirichlet(&problem2, &init2, &SolveOpts::default()).unwrap();
        assert_eq!(report.iterations, report2.iterations);
        assert_eq!(report.residual_norms, report2.residual_norms);
    }

    #[test]
    fn self_convergence_on_refined_grids() {
        // -u'' = -u^3, boundary 10: midnode values converge as the grid is
        // refined; successive differences shrink by >= 1.5.
        let mut mids = Vec::new();
        for n in [64usize, 128, 256, 512] {
            let grid = interval(0.0, 2.0, n, 1.0);
            let problem = absorption_problem(grid.clone(), 2.0, 3.0, 10.0);
            let init = default_init(&problem).unwrap();
            let (u, report) = solve_dirichlet(&problem, &init, &SolveOpts::default()).unwrap();
            assert!(report.converged);
            // middle node (n even: node index n/2 - 1 is at x = 1)
            let mid = n / 2 - 1;
            assert_relative_eq!(grid.nodes()[mid], 1.0, max_relative = 1e-12);
            mids.push(u.values()[mid]);
        }
        let d1 = (mids[1] - mids[0]).abs();
        let d2 = (mids[2] - mids[1]).abs();
        let d3 = (mids[3] - mids[2]).abs();
        assert!(d1 / d2 >= 1.5, "{mids:?}");
        assert!(d2 / d3 >= 1.5, "{mids:?}");
    }

    #[test]
    fn reference_solution_against_fine_grid() {
        // 4x-refined reference at shared midnodes, 1e-3 relative.
        let coarse_n = 256;
        let grid_c = interval(0.0, 2.0, coarse_n, 1.0);
        let grid_f = interval(0.0, 2.0, coarse_n * 4, 1.0);
        let pc = absorption_problem(grid_c.clone(), 2.0, 3.0, 10.0);
        let pf = absorption_problem(grid_f.clone(), 2.0, 3.0, 10.0);
        let (uc, _) = solve_dirichlet(&pc, &default_init(&pc).unwrap(), &SolveOpts::default())
            .unwrap();
        let (uf, _) = solve_dirichlet(&pf, &default_init(&pf).unwrap(), &SolveOpts::default())
            .unwrap();
        for (i, &x) in grid_c.nodes().iter().enumerate() {
            let j = grid_f
                .nodes()
                .iter()
                .position(|&y| (y - x).abs() < 1e-12)
                .expect("shared node");
            let rel = ((uc.values()[i] - uf.values()[j]) / uf.values()[j]).abs();
            assert!(rel < 1e-3, "x={x}: rel={rel}");
        }
    }

    #[test]
    fn torsion_minimum_interval_and_ball() {
        let (w0, _) = torsion_minimum(
            2.0,
            Geometry::Interval {
                lo: -1.0,
                hi: 1.0,
                blow_up: BlowUpEnds::Both,
            },
            512,
            &SolveOpts::default(),
        )
        .unwrap();
        assert!((w0 - 1.0 / 1.0f64.cosh()).abs() < 1e-4, "w0 = {w0}");

        let (w0, _) = torsion_minimum(
            2.0,
            Geometry::Radial {
                dim: 3,
                r_lo: 0.0,
                r_hi: 1.0,
            },
            512,
            &SolveOpts::default(),
        )
        .unwrap();
        assert!((w0 - 1.0 / 1.0f64.sinh()).abs() < 1e-3, "w0 = {w0}");
    }

    #[test]
    fn torsion_minimum_tiny_domain_tends_to_one() {
        let (w0, _) = torsion_minimum(
            2.5,
            Geometry::Interval {
                lo: 0.0,
                hi: 1e-3,
                blow_up: BlowUpEnds::Both,
            },
            64,
            &SolveOpts::default(),
        )
        .unwrap();
        assert!(w0 > 0.999, "w0 = {w0}");
    }

    #[test]
    fn sub_super_roles() {
        let grid = interval(0.0, 2.0, 128, 0.9);
        let problem = absorption_problem(grid.clone(), 2.0, 3.0, 4.0);
        // constant L is a supersolution under pure absorption
        let const_l = Field::constant(grid.clone(), 4.0).unwrap();
        let (ok, _) = check_sub_super(&const_l, &problem, Role::Super).unwrap();
        assert!(ok);
        // and fails as a subsolution (strict absorption)
        let (ok, v) = check_sub_super(&const_l, &problem, Role::Sub).unwrap();
        assert!(!ok && v > 0.0);
        // a constant below the reaction/absorption balance point is a
        // subsolution: here lambda a g(1/2) = sqrt(1/2) > f(1/2) = 1/8.
        let mut reactive = problem.clone();
        reactive.lambda = 1.0;
        reactive.weight_a = WeightModel::constant(1.0).unwrap();
        reactive.reaction =
            NonlinearityModel::power(NonlinearityKind::ReactionG, 0.5, 1.0).unwrap();
        let half = Field::constant(grid.clone(), 0.5).unwrap();
        let half = half
            .with_boundary([EndCondition::Dirichlet(4.0), EndCondition::Dirichlet(4.0)])
            .unwrap();
        let (ok, _) = check_sub_super(&half, &reactive, Role::Sub).unwrap();
        assert!(ok);
        // the solved field itself passes both roles within tolerance
        let (u, _) =
            solve_dirichlet(&problem, &default_init(&problem).unwrap(), &SolveOpts::default())
                .unwrap();
        assert!(check_sub_super(&u, &problem, Role::Sub).unwrap().0);
        assert!(check_sub_super(&u, &problem, Role::Super).unwrap().0);
    }

    #[test]
    fn ordering_examples() {
        let grid = interval(0.0, 2.0, 64, 1.0);
        let problem = absorption_problem(grid.clone(), 2.0, 3.0, 6.0);
        let (u, _) =
            solve_dirichlet(&problem, &default_init(&problem).unwrap(), &SolveOpts::default())
                .unwrap();
        assert!(ordering_test(&u, &u).unwrap());
        let scaled = u.scaled(0.9).unwrap();
        // the 0.9-scaling is a subsolution under increasing f(t)/t^(p-1)
        let (ok, _) = check_sub_super(&scaled, &problem, Role::Sub).unwrap();
        assert!(ok);
        assert!(ordering_test(&u, &scaled).unwrap());
    }

    #[test]
    fn bracket_preserved_when_supplied() {
        let grid = interval(0.0, 2.0, 64, 1.0);
        let problem = absorption_problem(grid.clone(), 2.0, 3.0, 8.0);
        let n = grid.n_nodes();
        let lower = vec![1.0; n];
        let upper = vec![8.0; n];
        let opts = SolveOpts {
            bracket: Some(crate::solver::Bracket {
                lower: lower.clone(),
                upper: upper.clone(),
            }),
            ..SolveOpts::default()
        };
        let init = default_init(&problem).unwrap();
        let (u, report) = solve_dirichlet(&problem, &init, &opts).unwrap();
        assert!(report.converged);
        for &v in u.values() {
            assert!(v >= 1.0 - 1e-12 && v <= 8.0 + 1e-12);
        }
    }

    #[test]
    fn truncated_rhs_clamps() {
        let grid = interval(0.0, 2.0, 64, 1.0);
        let problem = absorption_problem(grid, 2.0, 3.0, 8.0);
        let at_sub = crate::solver::truncated_rhs(0.5, 0.1, 1.0, 4.0, &problem).unwrap();
        assert_relative_eq!(at_sub, -1.0); // f(1) = 1
        let inside = crate::solver::truncated_rhs(0.5, 2.0, 1.0, 4.0, &problem).unwrap();
        assert_relative_eq!(inside, -8.0);
        let degenerate = crate::solver::truncated_rhs(0.5, 99.0, 2.0, 2.0, &problem).unwrap();
        assert_relative_eq!(degenerate, -8.0); // constant at the bracket point
    }

    #[test]
    fn p3_norm_solve_works() {
        // p = 3 absorption: exercises the degenerate flux law.
        let grid = interval(0.0, 2.0, 256, 0.95);
        let problem = absorption_problem(grid, 3.0, 4.0, 6.0);
        let init = default_init(&problem).unwrap();
        let (u, report) = solve_dirichlet(&problem, &init, &SolveOpts::default()).unwrap();
        assert!(report.converged, "norms: {:?}", report.residual_norms);
        assert!(u.values().iter().all(|&v| v > 0.0 && v <= 6.0 + 1e-9));
    }

    #[test]
    fn barrier_problem_with_zero_boundary() {
        // annulus barrier: -(r |Z'| Z')'/r = -C Z^q, Z(1) = K, Z(3) = 0.
        let grid = Arc::new(
            build_grid(
                Geometry::Radial {
                    dim: 2,
                    r_lo: 1.0,
                    r_hi: 3.0,
                },
                128,
                1.0,
            )
            .unwrap(),
        );
        let problem = DirichletProblem {
            grid: grid.clone(),
            p: 2.0,
            lambda: 0.0,
            weight_a: WeightModel::constant(0.0).unwrap(),
            weight_b: WeightModel::constant(2.0).unwrap(),
            absorption: NonlinearityModel::power(NonlinearityKind::AbsorptionF, 2.0, 1.0)
                .unwrap(),
            reaction: NonlinearityModel::power(NonlinearityKind::ReactionG, 0.0, 0.0).unwrap(),
            boundary: [EndCondition::Dirichlet(4.0), EndCondition::Dirichlet(0.0)],
            positivity_floor: 0.0,
        };
        let init = default_init(&problem).unwrap();
        let (z, report) = solve_dirichlet(&problem, &init, &SolveOpts::default()).unwrap();
        assert!(report.converged);
        // interior positive, decreasing from K toward 0
        assert!(z.values().iter().all(|&v| v > 0.0 && v < 4.0));
        let vals = z.values();
        assert!(vals[0] > vals[vals.len() - 1]);
    }

    #[test]
    fn monotone_pairing_positive() {
        let a = [0.3, -1.2, 0.7];
        let b = [0.1, 0.4, -0.2];
        for &p in &[1.5, 2.0, 3.0] {
            assert!(crate::solver::monotone_pairing(&a, &b, p) > 0.0);
            assert_eq!(crate::solver::monotone_pairing(&a, &a, p), 0.0);
        }
    }
}
