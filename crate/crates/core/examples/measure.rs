// temporary: measure rate-fit quality for the acceptance configurations
use plapblow_core::discretization::*;
use plapblow_core::ladder::*;
use plapblow_core::model::*;
use plapblow_core::solver::*;
use std::sync::Arc;
use std::time::Instant;

fn run(p: f64, q: f64, n: usize, ratio: f64, rungs: usize, l0: f64) {
    let grid = Arc::new(build_grid(
        Geometry::Interval { lo: 0.0, hi: 2.0, blow_up: BlowUpEnds::Both },
        n, ratio).unwrap());
    let problem = DirichletProblem {
        grid, p, lambda: 0.0,
        weight_a: WeightModel::constant(0.0).unwrap(),
        weight_b: WeightModel::constant(1.0).unwrap(),
        absorption: NonlinearityModel::power(NonlinearityKind::AbsorptionF, q, 1.0).unwrap(),
        reaction: NonlinearityModel::power(NonlinearityKind::ReactionG, 0.0, 0.0).unwrap(),
        boundary: [EndCondition::Dirichlet(l0), EndCondition::Dirichlet(l0)],
        positivity_floor: 1e-8,
    };
    let config = LadderConfig { l0, max_rungs: rungs, ..LadderConfig::default() };
    let t0 = Instant::now();
    let report = run_ladder(&problem, &config, None).unwrap();
    let alpha = (p - 0.0) / (q - p + 1.0);
    let c = (p - 1.0) * alpha.powf(p - 1.0) * (1.0 + alpha);
    let a_true = c.powf(1.0 / (q - p + 1.0));
    let fit = report.rate_fit.unwrap();
    println!("p={p} q={q} n={n} ratio={ratio} rungs={rungs}: conv={} t={:?}", report.converged, t0.elapsed());
    println!("  alpha_hat={:.6} (true {alpha:.6}, err {:+.4e})", fit.alpha_hat, fit.alpha_hat - alpha);
    println!("  a_hat={:.6} constrained={:.6} (true {a_true:.6}, rel err {:+.4e} / {:+.4e})",
        fit.a_hat, fit.a_hat_constrained, (fit.a_hat - a_true)/a_true, (fit.a_hat_constrained - a_true)/a_true);
    println!("  window=({:.3e},{:.3e}) pts={} rms={:.2e}", fit.window.0, fit.window.1, fit.n_points, fit.rms_log_residual);
    let iters: Vec<usize> = report.rungs.iter().map(|r| r.solve.iterations).collect();
    println!("  rung iterations: {iters:?}");
}

fn main() {
    run(2.0, 3.0, 2048, 0.85, 12, 4.0);
    run(2.0, 3.0, 512, 0.85, 10, 4.0);
    run(3.0, 4.0, 2048, 0.85, 12, 4.0);
    run(3.0, 4.0, 1024, 0.9, 10, 4.0);
}
