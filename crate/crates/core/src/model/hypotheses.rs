//! Executable growth hypotheses: the Keller-Osserman integral test, the
//! liminf floor of the normalized absorption ratio, the admissible reaction
//! threshold, and the combined validator producing a [`HypothesisReport`].

use crate::error::{CoreError, Result};
use crate::model::envelope::{envelope_inf_above, envelope_sup_above, envelope_sup_below};
use crate::model::nonlinearity::{NonlinearityForm, NonlinearityKind, NonlinearityModel};
use crate::model::weight::WeightModel;
use crate::real::{cast, Real};
use crate::util::linear_fit;

/// Complete problem description consumed by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec<T> {
    pub p: T,
    pub lambda: T,
    /// Absorption nonlinearity `f`.
    pub absorption: NonlinearityModel<T>,
    /// Reaction nonlinearity `g`.
    pub reaction: NonlinearityModel<T>,
    /// Reaction weight `a` as a law of the boundary distance.
    pub weight_a: WeightModel<T>,
    /// Absorption weight `b` as a law of the boundary distance.
    pub weight_b: WeightModel<T>,
    /// Largest distance to the blow-up boundary inside the domain.
    pub d_max: T,
}

/// Strictness of the small-argument absorption limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    /// Enforce `lim_{s->0} f(s)/s^(p-1) = 0`.
    Strict,
    /// Accept a finite limit, below `1/||b||_inf` when `essinf a < 0`.
    Relaxed,
}

/// Outcome of the Keller-Osserman integral test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KoReport<T> {
    /// Quadrature stabilized and the fitted tail exponent is below -1.
    pub converges: bool,
    /// The tail fit was too noisy to trust; `converges` is then not a
    /// certificate either way.
    pub indeterminate: bool,
    /// Integral over `[1, T_max]` plus the extrapolated tail when convergent.
    pub integral: T,
    /// Fitted log-log slope of `F(t)^(-1/p)` over the trailing decades.
    pub tail_exponent: T,
    /// RMS residual of the tail fit.
    pub fit_rms: T,
}

/// Estimate of the liminf in the normalized-ratio floor condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiminfReport<T> {
    pub estimate: T,
    pub holds: bool,
}

/// Admissible reaction threshold; `value` is `+inf` when the reaction weight
/// is nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaStar<T> {
    pub value: T,
    /// The maximizer `M_0` of the threshold functional (absent when the
    /// threshold is unconstrained).
    pub maximizer: Option<T>,
    /// The maximum of the functional itself.
    pub phi_max: Option<T>,
}

/// Tuning knobs; the defaults are what the acceptance configurations use.
#[derive(Debug, Clone, Copy)]
pub struct HypothesisOpts<T> {
    /// Upper integration/sampling bound for power-law models.
    pub t_max: T,
    /// Liminf floor threshold.
    pub eps_liminf: T,
    /// Small-argument ratio regarded as zero (strict mode, tables).
    pub eps_zero_limit: T,
    /// Tail-exponent margin below -1 required to declare convergence.
    pub slope_margin: T,
    /// RMS of the tail fit above which the result is flagged indeterminate.
    pub fit_rms_guard: T,
    /// Coarse scan points for the threshold functional.
    pub grid_points: usize,
    /// Relative tolerance of the golden-section refinement.
    pub golden_tol: T,
}

impl<T: Real> Default for HypothesisOpts<T> {
    fn default() -> Self {
        Self {
            t_max: cast(1e8),
            eps_liminf: cast(1e-6),
            eps_zero_limit: cast(1e-6),
            slope_margin: cast(1e-3),
            fit_rms_guard: cast(0.1),
            grid_points: 4096,
            golden_tol: cast(1e-10),
        }
    }
}

/// Antiderivative `F(t) = int_0^t f` with analytic handling of power laws
/// and trapezoid accumulation plus declared-tail continuation for tables.
struct Antiderivative<T> {
    power: Option<(T, T)>, // (coeff, exponent)
    nodes: Vec<T>,
    cumulative: Vec<T>,
    values: Vec<T>,
    tail: Option<T>,
}

impl<T: Real> Antiderivative<T> {
    fn build(f: &NonlinearityModel<T>) -> Self {
        match f.form() {
            NonlinearityForm::Power => Self {
                power: Some((f.asympt_coeff(), f.exponent())),
                nodes: Vec::new(),
                cumulative: Vec::new(),
                values: Vec::new(),
                tail: None,
            },
            NonlinearityForm::Tabulated {
                table,
                tail_exponent,
            } => {
                let half = cast::<T>(0.5);
                let (s0, v0) = table[0];
                let (s1, v1) = table[1];
                let head_slope = (v1.ln() - v0.ln()) / (s1.ln() - s0.ln());
                // Contribution of (0, s0] under head power extrapolation;
                // zero when the head decays too slowly to integrate.
                let mut acc = if head_slope > cast(-1.0) {
                    v0 * s0 / (head_slope + T::one())
                } else {
                    T::zero()
                };
                let mut nodes = Vec::with_capacity(table.len());
                let mut cumulative = Vec::with_capacity(table.len());
                let mut values = Vec::with_capacity(table.len());
                let mut prev = (s0, v0);
                for &(s, v) in table.iter() {
                    acc += half * (v + prev.1) * (s - prev.0);
                    nodes.push(s);
                    cumulative.push(acc);
                    values.push(v);
                    prev = (s, v);
                }
                Self {
                    power: None,
                    nodes,
                    cumulative,
                    values,
                    tail: *tail_exponent,
                }
            }
        }
    }

    fn eval(&self, t: T) -> T {
        if let Some((c, q)) = self.power {
            return c * t.powf(q + T::one()) / (q + T::one());
        }
        let n = self.nodes.len();
        let hi = self.nodes[n - 1];
        if t >= hi {
            let f_hi = self.values[n - 1];
            let base = self.cumulative[n - 1];
            return match self.tail {
                None => base,
                Some(tau) => {
                    // int_hi^t f_hi (x/hi)^tau dx
                    if (tau + T::one()).abs() < cast(1e-12) {
                        base + f_hi * hi * (t / hi).ln()
                    } else {
                        base + f_hi * hi / (tau + T::one())
                            * ((t / hi).powf(tau + T::one()) - T::one())
                    }
                }
            };
        }
        let lo = self.nodes[0];
        if t <= lo {
            return self.cumulative[0] * t / lo; // crude but only used below hull
        }
        let pos = self.nodes.partition_point(|&x| x <= t).clamp(1, n - 1);
        let (sa, sb) = (self.nodes[pos - 1], self.nodes[pos]);
        let (va, vb) = (self.values[pos - 1], self.values[pos]);
        let w = (t - sa) / (sb - sa);
        let vt = va + (vb - va) * w;
        self.cumulative[pos - 1] + cast::<T>(0.5) * (va + vt) * (t - sa)
    }

    /// Largest argument at which `eval` is meaningful.
    fn support_top(&self, default: T) -> T {
        if self.power.is_some() || self.tail.is_some() {
            default
        } else {
            self.nodes[self.nodes.len() - 1]
        }
    }
}

/// Keller-Osserman test: does `int_1^inf F(t)^(-1/p) dt` converge?
///
/// Decided by quadrature stabilization over equal log-width chunks combined
/// with a least-squares tail-exponent fit; a noisy fit flags the result
/// indeterminate instead of returning a silent boolean.
pub fn keller_osserman_check<T: Real>(
    f: &NonlinearityModel<T>,
    p: T,
    opts: &HypothesisOpts<T>,
) -> Result<KoReport<T>> {
    if f.kind() != NonlinearityKind::AbsorptionF {
        return Err(CoreError::InvalidModel(
            "Keller-Osserman test applies to the absorption nonlinearity".into(),
        ));
    }
    let big_f = Antiderivative::build(f);
    let t_top = big_f.support_top(opts.t_max);
    if !(t_top > cast(10.0)) {
        return Ok(KoReport {
            converges: false,
            indeterminate: true,
            integral: T::zero(),
            tail_exponent: T::nan(),
            fit_rms: T::nan(),
        });
    }
    let integrand = |t: T| big_f.eval(t).powf(-T::one() / p);

    // Composite Simpson in log space over equal log-width chunks.
    let lo = T::one();
    let l_lo = lo.ln();
    let l_hi = t_top.ln();
    let decades = (l_hi - l_lo) / cast::<T>(std::f64::consts::LN_10);
    let n_chunks = (decades.to_f64().unwrap_or(8.0).ceil() as usize * 2).max(4);
    let mut increments = Vec::with_capacity(n_chunks);
    let mut total = T::zero();
    let per_chunk = 64usize;
    for k in 0..n_chunks {
        let a = l_lo + (l_hi - l_lo) * cast::<T>(k as f64 / n_chunks as f64);
        let b = l_lo + (l_hi - l_lo) * cast::<T>((k + 1) as f64 / n_chunks as f64);
        let h = (b - a) / cast::<T>(per_chunk as f64);
        // Simpson on g(u) = integrand(e^u) e^u.
        let g = |u: T| integrand(u.exp()) * u.exp();
        let mut s = g(a) + g(b);
        for j in 1..per_chunk {
            let u = a + h * cast::<T>(j as f64);
            let w = if j % 2 == 1 { cast::<T>(4.0) } else { cast::<T>(2.0) };
            s += w * g(u);
        }
        let inc = s * h / cast::<T>(3.0);
        increments.push(inc);
        total += inc;
    }
    let stabilized = {
        let n = increments.len();
        increments[n - 1] < increments[n - 2] * cast::<T>(0.999)
    };

    // Tail fit over the trailing two log-chunks (at least half a decade).
    let fit_lo = l_lo + (l_hi - l_lo) * cast::<T>((n_chunks - 2) as f64 / n_chunks as f64);
    let m = 48usize;
    let mut xs = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    for j in 0..m {
        let u = fit_lo + (l_hi - fit_lo) * cast::<T>(j as f64 / (m - 1) as f64);
        xs.push(u);
        ys.push(integrand(u.exp()).ln());
    }
    let (slope, _, rms) = linear_fit(&xs, &ys);
    let indeterminate = !(rms <= opts.fit_rms_guard) || !slope.is_finite();

    let converges =
        !indeterminate && stabilized && slope < -T::one() - opts.slope_margin;
    let mut integral = total;
    if converges {
        // extrapolate: int_T^inf c t^slope dt with c matched at T.
        integral += integrand(t_top) * t_top / (-slope - T::one());
    }
    Ok(KoReport {
        converges,
        indeterminate,
        integral,
        tail_exponent: slope,
        fit_rms: rms,
    })
}

/// Floor of `inf{f(t)/t^(p-1), t >= s} / (f(s)/s^(p-1))` over the largest
/// sampled decade; `holds` when the running minimum clears `eps_liminf`.
pub fn ratio_liminf_check<T: Real>(
    f: &NonlinearityModel<T>,
    p: T,
    opts: &HypothesisOpts<T>,
) -> Result<LiminfReport<T>> {
    let s_top = match f.hull() {
        Some((_, hi)) => hi,
        None => opts.t_max,
    };
    let s_lo = s_top / cast::<T>(10.0);
    let n = 64usize;
    let mut estimate = T::infinity();
    for j in 0..n {
        let s = s_lo * (s_top / s_lo).powf(cast::<T>(j as f64 / (n - 1) as f64));
        let lower = envelope_inf_above(f, p, s)?;
        let fv = f.eval(s)?;
        if fv > T::zero() {
            estimate = estimate.min(lower / fv);
        }
    }
    Ok(LiminfReport {
        estimate,
        holds: estimate > opts.eps_liminf,
    })
}

/// The threshold functional
/// `phi(M) = (M w0)^(p-1) / g_env(M w0) * [1 - b_inf * f_env(M)/M^(p-1)]`.
fn phi<T: Real>(
    f: &NonlinearityModel<T>,
    g: &NonlinearityModel<T>,
    p: T,
    b_inf: T,
    w0: T,
    m: T,
) -> Result<T> {
    let mw = m * w0;
    let g_env = envelope_sup_above(g, p, mw)?;
    let f_env = envelope_sup_below(f, p, m)?;
    let bracket = T::one() - b_inf * f_env / m.powf(p - T::one());
    Ok(mw.powf(p - T::one()) / g_env * bracket)
}

/// Largest admissible reaction strength.
///
/// `+inf` when `a0 >= 0`; otherwise `-sup phi / a0`, the supremum located by
/// a coarse log-grid scan refined with golden-section search.
#[allow(clippy::too_many_arguments)]
pub fn lambda_star<T: Real>(
    f: &NonlinearityModel<T>,
    g: &NonlinearityModel<T>,
    p: T,
    a0: T,
    b_inf: T,
    w0: T,
    opts: &HypothesisOpts<T>,
) -> Result<LambdaStar<T>> {
    if a0 >= T::zero() {
        return Ok(LambdaStar {
            value: T::infinity(),
            maximizer: None,
            phi_max: None,
        });
    }
    if !(b_inf > T::zero()) || !(w0 > T::zero() && w0 <= T::one()) {
        return Err(CoreError::InvalidModel(
            "lambda_star needs b_inf > 0 and w0 in (0, 1]".into(),
        ));
    }
    let lo = cast::<T>(1e-6);
    let hi = cast::<T>(1e6);
    let n = opts.grid_points.max(8);
    let mut best = T::neg_infinity();
    let mut best_i = 0usize;
    for i in 0..n {
        let m = lo * (hi / lo).powf(cast::<T>(i as f64 / (n - 1) as f64));
        if let Ok(v) = phi(f, g, p, b_inf, w0, m) {
            if v.is_finite() && v > best {
                best = v;
                best_i = i;
            }
        }
    }
    if !(best > T::zero()) {
        return Err(CoreError::SubSolutionFails);
    }
    let bra_lo = lo * (hi / lo).powf(cast::<T>(best_i.saturating_sub(1) as f64 / (n - 1) as f64));
    let bra_hi = lo * (hi / lo).powf(cast::<T>(((best_i + 1).min(n - 1)) as f64 / (n - 1) as f64));
    let m0 = crate::util::golden_max(bra_lo, bra_hi, opts.golden_tol, |m| {
        phi(f, g, p, b_inf, w0, m).unwrap_or(T::neg_infinity())
    });
    let phi_max = phi(f, g, p, b_inf, w0, m0)?;
    Ok(LambdaStar {
        value: -phi_max / a0,
        maximizer: Some(m0),
        phi_max: Some(phi_max),
    })
}

/// One witnessed finding attached to the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub hypothesis: String,
    pub witness: f64,
    pub message: String,
}

/// Everything the validator measured, with witnesses for every failure.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<T> {
    pub ko: KoReport<T>,
    pub liminf: LiminfReport<T>,
    pub f1_ok: bool,
    pub g0_ok: bool,
    pub f1prime_ok: bool,
    pub g0prime_ok: bool,
    pub a0: T,
    pub b0: T,
    pub b_sup: T,
    /// `None` when the threshold could not be computed (missing torsion
    /// minimum or failed construction); `+inf` when unconstrained.
    pub lambda_star: Option<T>,
    pub lambda_star_maximizer: Option<T>,
    /// Balance point of the envelope ordering, reported as a diagnostic.
    pub t1: Option<T>,
    pub mode: ValidationMode,
    pub required_pass: bool,
    pub diagnostics: Vec<Diagnostic>,
}

fn wit<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Small-argument ratio limit estimate: exact for power laws, the hull-floor
/// sample for tables.
fn small_ratio_limit<T: Real>(f: &NonlinearityModel<T>, p: T) -> Result<T> {
    match f.form() {
        NonlinearityForm::Power => {
            let growth = f.exponent() - (p - T::one());
            if growth > T::zero() {
                Ok(T::zero())
            } else if growth == T::zero() {
                Ok(f.asympt_coeff())
            } else if f.asympt_coeff() == T::zero() {
                Ok(T::zero())
            } else {
                Ok(T::infinity())
            }
        }
        NonlinearityForm::Tabulated { table, .. } => {
            let (s0, v0) = table[0];
            Ok(v0 / s0.powf(p - T::one()))
        }
    }
}

/// Large-argument ratio trend: `(grows_unbounded, bounded_above)`.
fn large_ratio_trend<T: Real>(f: &NonlinearityModel<T>, p: T) -> (bool, bool) {
    match f.form() {
        NonlinearityForm::Power => {
            let growth = f.exponent() - (p - T::one());
            if f.asympt_coeff() == T::zero() {
                (false, true)
            } else if growth > T::zero() {
                (true, false)
            } else {
                (false, true)
            }
        }
        NonlinearityForm::Tabulated {
            table,
            tail_exponent,
        } => {
            let pm1 = p - T::one();
            match tail_exponent {
                Some(tau) => (*tau > pm1, *tau <= pm1),
                None => {
                    // slope of the trailing decade of the table ratio
                    let (_, hi) = (table[0].0, table[table.len() - 1].0);
                    let lo = hi / cast::<T>(10.0);
                    let pts: Vec<&(T, T)> =
                        table.iter().filter(|&&(s, _)| s >= lo).collect();
                    if pts.len() < 3 {
                        return (false, false);
                    }
                    let xs: Vec<T> = pts.iter().map(|&&(s, _)| s.ln()).collect();
                    let ys: Vec<T> =
                        pts.iter().map(|&&(s, v)| (v / s.powf(pm1)).ln()).collect();
                    let (slope, _, _) = linear_fit(&xs, &ys);
                    (slope > cast(0.02), slope <= cast(0.02))
                }
            }
        }
    }
}

/// Evaluates every hypothesis with witnesses. `w0` is the interior minimum
/// of the torsion-like problem, required to price the reaction threshold
/// when `essinf a < 0`.
pub fn validate<T: Real>(
    spec: &ProblemSpec<T>,
    w0: Option<T>,
    mode: ValidationMode,
    opts: &HypothesisOpts<T>,
) -> Result<HypothesisReport<T>> {
    let p = spec.p;
    let mut diagnostics = Vec::new();
    let a0 = spec.weight_a.essinf(spec.d_max);
    let b0 = spec.weight_b.essinf(spec.d_max);
    let b_sup = spec.weight_b.esssup(spec.d_max);
    let a_sup = spec.weight_a.esssup(spec.d_max);

    if !(b0 > T::zero()) {
        diagnostics.push(Diagnostic {
            hypothesis: "b0 > 0".into(),
            witness: wit(b0),
            message: "absorption weight must have positive essential infimum".into(),
        });
    }

    // (f_1): zero small-argument ratio (or relaxed bound) and unbounded
    // large-argument ratio.
    let lim0 = small_ratio_limit(&spec.absorption, p)?;
    let (f_grows, _) = large_ratio_trend(&spec.absorption, p);
    let f1_i_ok = match mode {
        ValidationMode::Strict => lim0 <= opts.eps_zero_limit,
        ValidationMode::Relaxed => {
            if a0 >= T::zero() {
                lim0.is_finite()
            } else {
                lim0 < T::one() / b_sup
            }
        }
    };
    if !f1_i_ok {
        diagnostics.push(Diagnostic {
            hypothesis: "f1(i)".into(),
            witness: wit(lim0),
            message: "small-argument ratio f(s)/s^(p-1) does not vanish (or exceeds the relaxed bound)"
                .into(),
        });
    }
    if !f_grows {
        diagnostics.push(Diagnostic {
            hypothesis: "f1(ii)".into(),
            witness: wit(spec.absorption.exponent()),
            message: "large-argument ratio f(s)/s^(p-1) does not grow unboundedly".into(),
        });
    }
    let f1_ok = f1_i_ok && f_grows;

    // (g_0): the small-argument limit l may be anything in [0, inf]; only
    // boundedness at infinity is a requirement.
    let (g_grows, g_bounded) = large_ratio_trend(&spec.reaction, p);
    let g0_ok = !g_grows && g_bounded;
    if !g0_ok {
        diagnostics.push(Diagnostic {
            hypothesis: "g0(ii)".into(),
            witness: wit(spec.reaction.exponent()),
            message: "reaction ratio g(s)/s^(p-1) must stay bounded at infinity".into(),
        });
    }
    let g_lim0 = small_ratio_limit(&spec.reaction, p).unwrap_or(T::nan());
    diagnostics.push(Diagnostic {
        hypothesis: "g0(i)".into(),
        witness: wit(g_lim0),
        message: "small-argument reaction limit l (any value in [0, inf] accepted)".into(),
    });

    // Declared power asymptotes for the rate formulas.
    let f1prime_ok = spec.absorption.exponent().is_finite()
        && spec.absorption.exponent() > p - T::one()
        && spec.absorption.asympt_coeff() > T::zero();
    if !f1prime_ok {
        diagnostics.push(Diagnostic {
            hypothesis: "f1'".into(),
            witness: wit(spec.absorption.exponent()),
            message: "absorption needs a declared power asymptote with q > p-1".into(),
        });
    }
    let g0prime_ok =
        spec.reaction.exponent().is_finite() && spec.reaction.exponent() <= p - T::one();
    if !g0prime_ok {
        diagnostics.push(Diagnostic {
            hypothesis: "g0'".into(),
            witness: wit(spec.reaction.exponent()),
            message: "reaction needs a declared power asymptote with m <= p-1".into(),
        });
    }

    let ko = keller_osserman_check(&spec.absorption, p, opts)?;
    if !ko.converges {
        diagnostics.push(Diagnostic {
            hypothesis: "KO".into(),
            witness: wit(ko.tail_exponent),
            message: if ko.indeterminate {
                "Keller-Osserman tail fit indeterminate".into()
            } else {
                "Keller-Osserman integral diverges (tail exponent >= -1)".into()
            },
        });
    }
    let liminf = ratio_liminf_check(&spec.absorption, p, opts)?;
    if !liminf.holds {
        diagnostics.push(Diagnostic {
            hypothesis: "f0".into(),
            witness: wit(liminf.estimate),
            message: "normalized absorption ratio has vanishing liminf floor".into(),
        });
    }

    // Reaction threshold.
    let (ls_value, ls_max) = if a0 >= T::zero() {
        (Some(T::infinity()), None)
    } else {
        match w0 {
            None => {
                diagnostics.push(Diagnostic {
                    hypothesis: "lambda*".into(),
                    witness: wit(a0),
                    message: "essinf a < 0 but no torsion minimum w0 supplied; threshold unknown"
                        .into(),
                });
                (None, None)
            }
            Some(w0) => match lambda_star(
                &spec.absorption,
                &spec.reaction,
                p,
                a0,
                b_sup,
                w0,
                opts,
            ) {
                Ok(ls) => (Some(ls.value), ls.maximizer),
                Err(e) => {
                    diagnostics.push(Diagnostic {
                        hypothesis: "lambda*".into(),
                        witness: wit(a0),
                        message: format!("threshold construction failed: {e}"),
                    });
                    (None, None)
                }
            },
        }
    };
    let lambda_ok = match ls_value {
        Some(v) => spec.lambda < v,
        None => false,
    };
    if !lambda_ok {
        diagnostics.push(Diagnostic {
            hypothesis: "lambda < lambda*".into(),
            witness: wit(spec.lambda),
            message: "reaction strength not admissible".into(),
        });
    }

    // Envelope balance point, a diagnostic only; needs a bounded reaction
    // weight and a positive reaction strength.
    let t1 = if spec.lambda > T::zero() && a_sup.is_finite() && a_sup > T::zero() && b0 > T::zero()
    {
        balance_point(&spec.absorption, &spec.reaction, p, b0, spec.lambda * a_sup)
    } else {
        None
    };

    let required_pass = ko.converges
        && !ko.indeterminate
        && liminf.holds
        && f1_ok
        && g0_ok
        && b0 > T::zero()
        && lambda_ok;

    Ok(HypothesisReport {
        ko,
        liminf,
        f1_ok,
        g0_ok,
        f1prime_ok,
        g0prime_ok,
        a0,
        b0,
        b_sup,
        lambda_star: ls_value,
        lambda_star_maximizer: ls_max,
        t1,
        mode,
        required_pass,
        diagnostics,
    })
}

/// Root of `b0 * f_env(t) = c * g_env(t)` (lower absorption envelope versus
/// upper reaction envelope), located by log bisection when bracketed.
fn balance_point<T: Real>(
    f: &NonlinearityModel<T>,
    g: &NonlinearityModel<T>,
    p: T,
    b0: T,
    c: T,
) -> Option<T> {
    let h = |t: T| -> Option<T> {
        let fe = envelope_inf_above(f, p, t).ok()?;
        let ge = envelope_sup_above(g, p, t).ok()?;
        Some(b0 * fe - c * ge)
    };
    let mut lo = cast::<T>(1e-8);
    let mut hi = cast::<T>(1e12);
    let (h_lo, h_hi) = (h(lo)?, h(hi)?);
    if !(h_lo < T::zero() && h_hi > T::zero()) {
        return None;
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        match h(mid) {
            Some(v) if v < T::zero() => lo = mid,
            Some(_) => hi = mid,
            None => return None,
        }
    }
    Some((lo * hi).sqrt())
}
