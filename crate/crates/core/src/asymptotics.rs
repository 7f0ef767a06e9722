//! Closed-form boundary asymptotics.
//!
//! Near the boundary a blow-up solution behaves like `A * d^(-alpha)` where
//! `alpha = (p - gamma)/(q - p + 1)` and `A` solves the scalar balance
//!
//! ```text
//! fQ * A^(q-m) - (p-1) * alpha^(p-1) * (1+alpha) * A^(p-m-1) - R = 0
//! ```
//!
//! with `fQ` the absorption strength at the boundary and `R` the (folded)
//! reaction strength. This module computes the exponents, solves the balance
//! by a bracketing bisection/Newton hybrid, and provides a pointwise residual
//! oracle for the exact one-dimensional profile.

use crate::error::{CoreError, Result};
use crate::real::{cast, Real};

/// Analytic boundary behavior at one boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint<T> {
    /// Blow-up exponent `alpha > 0`.
    pub alpha: T,
    /// Decay exponent of the reaction weight.
    pub eta: T,
    /// Absorption weight limit `Q > 0`.
    pub q_weight: T,
    /// Reaction weight limit `R >= 0`.
    pub r_weight: T,
    /// Blow-up constant `A > 0`.
    pub a_constant: T,
    /// Reaction strength `lambda >= 0`.
    pub lambda: T,
}

/// `alpha = (p - gamma)/(q - p + 1)`, positive for supercritical absorption.
pub fn blowup_exponent<T: Real>(p: T, q: T, gamma: T) -> Result<T> {
    if q <= p - T::one() {
        return Err(CoreError::SupercriticalRequired {
            q: q.to_f64().unwrap_or(f64::NAN),
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok((p - gamma) / (q - p + T::one()))
}

/// `eta = ((p-1-m)/(q-p+1)) * (p - gamma) + p`, the decay exponent the
/// reaction weight must carry for the two-sided power balance.
pub fn reaction_decay_exponent<T: Real>(p: T, q: T, m: T, gamma: T) -> Result<T> {
    if m > p - T::one() {
        return Err(CoreError::ReactionExponentTooLarge {
            m: m.to_f64().unwrap_or(f64::NAN),
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let alpha = blowup_exponent(p, q, gamma)?;
    Ok((p - T::one() - m) * alpha + p)
}

/// Coefficient of the middle term of the balance:
/// `c = (p-1) * alpha^(p-1) * (1 + alpha)`.
fn middle_coefficient<T: Real>(p: T, alpha: T) -> T {
    (p - T::one()) * alpha.powf(p - T::one()) * (T::one() + alpha)
}

/// Solves `fQ * A^(q-m) - c * A^(p-m-1) - S = 0` for its unique positive
/// root, where `c = (p-1) alpha^(p-1) (1+alpha)` and `S = lambda * g_inf * R`.
///
/// The root is bracketed analytically from the equation's two-term balances
/// and then polished by log-midpoint bisection followed by Newton steps; the
/// residual of the returned root is below `1e-12` relative to the dominant
/// term.
#[allow(clippy::too_many_arguments)]
pub fn solve_blowup_constant<T: Real>(
    p: T,
    q: T,
    m: T,
    alpha: T,
    q_weight: T,
    r_weight: T,
    lambda: T,
    f_inf: T,
    g_inf: T,
) -> Result<T> {
    let one = T::one();
    if q <= p - one {
        return Err(CoreError::SupercriticalRequired {
            q: q.to_f64().unwrap_or(f64::NAN),
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    if m > p - one {
        return Err(CoreError::ReactionExponentTooLarge {
            m: m.to_f64().unwrap_or(f64::NAN),
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let fq = f_inf * q_weight;
    if !(fq > T::zero()) || alpha <= T::zero() {
        return Err(CoreError::InvalidModel(
            "solve_blowup_constant needs f_inf*Q > 0 and alpha > 0".into(),
        ));
    }
    let s = lambda * g_inf * r_weight;
    if s < T::zero() {
        return Err(CoreError::InvalidModel(
            "reaction term lambda*g_inf*R must be nonnegative".into(),
        ));
    }
    let c = middle_coefficient(p, alpha);
    let e_hi = q - m; // exponent of the leading term, > 0
    let e_lo = p - m - one; // exponent of the middle term, >= 0
    let h = |a: T| fq * a.powf(e_hi) - c * a.powf(e_lo) - s;

    // Analytic bracket: above max(A1, A2) the leading term dominates both
    // others; below A1/4^(1/(q-p+1)) the middle term dominates.
    let four = cast::<T>(4.0);
    let a1 = (four * c / fq).powf(one / (q - p + one));
    let mut hi = a1;
    if s > T::zero() {
        let a2 = (four * s / fq).powf(one / e_hi);
        hi = hi.max(a2);
    }
    let mut lo = (c / (four * fq)).powf(one / (q - p + one));
    if !(lo < hi) {
        lo = hi / cast::<T>(16.0);
    }
    let (h_lo, h_hi) = (h(lo), h(hi));
    if !(h_lo < T::zero()) || !(h_hi > T::zero()) {
        return Err(CoreError::BracketFailure {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
            h_lo: h_lo.to_f64().unwrap_or(f64::NAN),
            h_hi: h_hi.to_f64().unwrap_or(f64::NAN),
        });
    }

    // Log-midpoint bisection narrows the bracket safely.
    for _ in 0..80 {
        let mid = (lo * hi).sqrt();
        if !(mid > lo && mid < hi) {
            break;
        }
        if h(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish; the root is simple so this converges quadratically.
    let dh = |a: T| fq * e_hi * a.powf(e_hi - one) - c * e_lo * a.powf(e_lo - one);
    let mut a = (lo * hi).sqrt();
    for _ in 0..30 {
        let step = h(a) / dh(a);
        let next = a - step;
        if !(next > T::zero()) || !next.is_finite() {
            break;
        }
        let done = step.abs() <= cast::<T>(1e-16) * a;
        a = next;
        if done {
            break;
        }
    }
    Ok(a)
}

/// Convenience: rate data for one boundary point with weights `(Q, gamma)`
/// and `(R, eta)` and asymptote coefficients `f_inf`, `g_inf`.
#[allow(clippy::too_many_arguments)]
pub fn rate_point<T: Real>(
    p: T,
    q: T,
    m: T,
    gamma: T,
    q_weight: T,
    r_weight: T,
    lambda: T,
    f_inf: T,
    g_inf: T,
) -> Result<RatePoint<T>> {
    let alpha = blowup_exponent(p, q, gamma)?;
    let eta = reaction_decay_exponent(p, q, m, gamma)?;
    let a = solve_blowup_constant(p, q, m, alpha, q_weight, r_weight, lambda, f_inf, g_inf)?;
    Ok(RatePoint {
        alpha,
        eta,
        q_weight,
        r_weight,
        a_constant: a,
        lambda,
    })
}

/// The exact profile `A * x^(-alpha)` for `x > 0`.
pub fn power_profile<T: Real>(a_constant: T, alpha: T, x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(CoreError::NonPositiveArgument(
            x.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(a_constant * x.powf(-alpha))
}

/// Pointwise residual of `u = A x^(-alpha)` in the one-dimensional equation
///
/// ```text
/// -(|u'|^(p-2) u')' = R x^(-eta) u^m - Q x^(-gamma) u^q
/// ```
///
/// evaluated with the analytic derivative. Vanishes identically when
/// `(alpha, eta, A)` come from the exponent formulas and the balance root.
/// Terms are combined in log-magnitude form so that widely separated
/// exponents do not overflow.
#[allow(clippy::too_many_arguments)]
pub fn profile_residual<T: Real>(
    p: T,
    q: T,
    m: T,
    gamma: T,
    eta: T,
    q_weight: T,
    r_weight: T,
    a_constant: T,
    alpha: T,
    x: T,
) -> Result<T> {
    let (value, scale) = profile_residual_parts(
        p, q, m, gamma, eta, q_weight, r_weight, a_constant, alpha, x,
    )?;
    Ok(value * scale)
}

/// Residual relative to the dominant term, a dimensionless defect.
#[allow(clippy::too_many_arguments)]
pub fn profile_residual_relative<T: Real>(
    p: T,
    q: T,
    m: T,
    gamma: T,
    eta: T,
    q_weight: T,
    r_weight: T,
    a_constant: T,
    alpha: T,
    x: T,
) -> Result<T> {
    let (value, _) = profile_residual_parts(
        p, q, m, gamma, eta, q_weight, r_weight, a_constant, alpha, x,
    )?;
    Ok(value)
}

/// Shared evaluation: returns `(relative_residual, dominant_magnitude)` with
/// `residual = relative_residual * dominant_magnitude`.
#[allow(clippy::too_many_arguments)]
fn profile_residual_parts<T: Real>(
    p: T,
    q: T,
    m: T,
    gamma: T,
    eta: T,
    q_weight: T,
    r_weight: T,
    a_constant: T,
    alpha: T,
    x: T,
) -> Result<(T, T)> {
    if !(x > T::zero()) {
        return Err(CoreError::NonPositiveArgument(
            x.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let one = T::one();
    let lx = x.ln();
    let la = a_constant.ln();
    // LHS = -(alpha A)^(p-1) (alpha+1)(p-1) x^(-(alpha+1)(p-1)-1)
    // RHS terms: R x^(-eta) u^m = R A^m x^(-eta - m alpha)
    //            -Q x^(-gamma) u^q = -Q A^q x^(-gamma - q alpha)
    // residual = LHS - RHS; signed terms in log-magnitude form.
    let mut ln_mag = [T::neg_infinity(); 3];
    let mut sign = [T::zero(); 3];
    let coef1 = (alpha + one) * (p - one);
    if coef1 > T::zero() && alpha * a_constant > T::zero() {
        ln_mag[0] = (p - one) * (alpha * a_constant).ln()
            + coef1.ln()
            + (-(alpha + one) * (p - one) - one) * lx;
        sign[0] = -one;
    }
    if r_weight > T::zero() {
        ln_mag[1] = r_weight.ln() + m * la + (-eta - m * alpha) * lx;
        sign[1] = -one;
    }
    if q_weight > T::zero() {
        ln_mag[2] = q_weight.ln() + q * la + (-gamma - q * alpha) * lx;
        sign[2] = one;
    }
    let peak = ln_mag
        .iter()
        .copied()
        .fold(T::neg_infinity(), |a, b| a.max(b));
    if peak == T::neg_infinity() {
        return Ok((T::zero(), T::zero()));
    }
    let mut rel = T::zero();
    for i in 0..3 {
        if sign[i] != T::zero() {
            rel += sign[i] * (ln_mag[i] - peak).exp();
        }
    }
    Ok((rel, peak.exp()))
}

/// The two closed-form constants for the pure power-absorption case
/// (`m = p-1`, `gamma = 0`, `R = 0`) with boundary weight `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryConstants<T> {
    /// `b^(-1/(q-p+1)) * K^(-1/(q-p+1))` with
    /// `K = (p-1)(q+1)p^(p-1) / (q-p+1)^p`.
    pub printed: T,
    /// The balance-equation root for the same configuration,
    /// `(K/b)^(1/(q-p+1))`; differs from `printed` by the sign of the
    /// exponent on `K`. Both are reported, none silently preferred.
    pub rate_equation: T,
}

/// Computes both constants side by side; see [`CorollaryConstants`].
pub fn corollary_constants<T: Real>(p: T, q: T, b_at_boundary: T) -> Result<CorollaryConstants<T>> {
    let one = T::one();
    if q <= p - one {
        return Err(CoreError::SupercriticalRequired {
            q: q.to_f64().unwrap_or(f64::NAN),
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !(b_at_boundary > T::zero()) {
        return Err(CoreError::InvalidModel("boundary weight must be positive".into()));
    }
    let d = q - p + one;
    let k = (p - one) * (q + one) * p.powf(p - one) / d.powf(p);
    let printed = b_at_boundary.powf(-one / d) * k.powf(-one / d);
    let alpha = p / d;
    let m = p - one;
    let a = solve_blowup_constant(
        p,
        q,
        m,
        alpha,
        b_at_boundary,
        T::zero(),
        T::zero(),
        one,
        one,
    )?;
    Ok(CorollaryConstants {
        printed,
        rate_equation: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn blowup_exponent_examples() {
        assert_relative_eq!(blowup_exponent(2.0, 3.0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(blowup_exponent(3.0, 3.0, 0.0).unwrap(), 3.0);
        assert_relative_eq!(blowup_exponent(2.0, 3.0, -1.0).unwrap(), 1.5);
        assert!(matches!(
            blowup_exponent(2.0, 1.0, 0.0),
            Err(CoreError::SupercriticalRequired { .. })
        ));
    }

    #[test]
    fn reaction_decay_exponent_examples() {
        // m = p-1 makes the first term vanish: eta = p.
        assert_relative_eq!(reaction_decay_exponent(2.0, 3.0, 1.0, 0.0).unwrap(), 2.0);
        assert_relative_eq!(reaction_decay_exponent(2.5, 4.0, 1.5, -0.7).unwrap(), 2.5);
        assert_relative_eq!(reaction_decay_exponent(2.0, 3.0, 0.0, 0.0).unwrap(), 3.0);
        assert_relative_eq!(reaction_decay_exponent(2.0, 3.0, 1.0, -1.0).unwrap(), 2.0);
        assert!(matches!(
            reaction_decay_exponent(2.0, 3.0, 1.5, 0.0),
            Err(CoreError::ReactionExponentTooLarge { .. })
        ));
    }

    #[test]
    fn exponent_identity_eta_from_alpha() {
        for &(p, q, m, g) in &[
            (1.5, 1.2, 0.0, -0.5),
            (2.0, 3.0, -1.0, 0.0),
            (3.0, 4.5, 1.0, -2.0),
        ] {
            let alpha = blowup_exponent(p, q, g).unwrap();
            let eta = reaction_decay_exponent(p, q, m, g).unwrap();
            assert_relative_eq!(eta, (p - 1.0 - m) * alpha + p, max_relative = 1e-14);
        }
    }

    #[test]
    fn root_matches_closed_form_when_reaction_absent() {
        // R = 0: A = (c / (f_inf Q))^(1/(q-p+1)).
        for &(p, q, m, gamma, qw, fi) in &[
            (2.0f64, 3.0, 1.0, 0.0, 1.0, 1.0),
            (3.0, 4.0, 2.0, 0.0, 1.0, 1.0),
            (1.6, 2.2, -0.5, -1.3, 0.7, 2.0),
        ] {
            let alpha = blowup_exponent(p, q, gamma).unwrap();
            let c = (p - 1.0) * alpha.powf(p - 1.0) * (1.0 + alpha);
            let closed = (c / (fi * qw)).powf(1.0 / (q - p + 1.0));
            let a = solve_blowup_constant(p, q, m, alpha, qw, 0.0, 0.0, fi, 1.0).unwrap();
            assert_relative_eq!(a, closed, max_relative = 1e-12);
        }
    }

    #[test]
    fn root_sqrt2_and_sqrt5() {
        // p=2, q=3, m=1, gamma=0 (alpha=1), Q=f_inf=1, R=0 -> A = sqrt(2),
        // independently: u = A/x in u'' = u^3 gives 2A = A^3.
        let a = solve_blowup_constant(2.0, 3.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(a, 2.0f64.sqrt(), max_relative = 1e-13);
        // Folded reaction strength 3: h(A) = A^2 - 2 - 3 -> A = sqrt(5).
        let a = solve_blowup_constant(2.0, 3.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(a, 5.0f64.sqrt(), max_relative = 1e-13);
        let h = a * a - 2.0 - 3.0;
        assert!(h.abs() < 1e-12);
    }

    #[test]
    fn profile_examples() {
        assert_relative_eq!(power_profile(2.0f64.sqrt(), 1.0, 1.0).unwrap(), 2.0f64.sqrt());
        assert_relative_eq!(
            power_profile(2.0f64.sqrt(), 1.0, 2.0).unwrap(),
            2.0f64.sqrt() / 2.0
        );
        assert_relative_eq!(power_profile(2.0, 1.5, 4.0).unwrap(), 0.25);
        assert!(power_profile(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn residual_vanishes_for_consistent_parameters() {
        // Symbolic-substitution oracle: consistent (alpha, eta, A) zero the
        // residual at every x.
        for &x in &[0.1, 1.0, 10.0] {
            let r = profile_residual_relative(
                2.0,
                3.0,
                1.0,
                0.0,
                2.0,
                1.0,
                0.0,
                2.0f64.sqrt(),
                1.0,
                x,
            )
            .unwrap();
            assert!(r.abs() < 1e-12, "x={x}: rel residual {r}");
        }
        let r = profile_residual_relative(
            2.0,
            3.0,
            1.0,
            0.0,
            2.0,
            1.0,
            3.0,
            5.0f64.sqrt(),
            1.0,
            1.0,
        )
        .unwrap();
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn residual_sign_tracks_perturbation() {
        // The root is simple, so perturbing A tips the residual with the
        // sign of h'(A) * dA; here h'(A) > 0.
        let a = 2.0f64.sqrt();
        let up =
            profile_residual(2.0, 3.0, 1.0, 0.0, 2.0, 1.0, 0.0, 1.01 * a, 1.0, 1.0).unwrap();
        let down =
            profile_residual(2.0, 3.0, 1.0, 0.0, 2.0, 1.0, 0.0, 0.99 * a, 1.0, 1.0).unwrap();
        assert!(up > 0.0);
        assert!(down < 0.0);
    }

    #[test]
    fn corollary_constants_examples() {
        // p=2, q=3, b=1: K = 2, printed = 2^(-1/2), rate equation = sqrt(2).
        let c = corollary_constants(2.0, 3.0, 1.0).unwrap();
        assert_relative_eq!(c.printed, 1.0 / 2.0f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(c.rate_equation, 2.0f64.sqrt(), max_relative = 1e-12);

        // p=2, q=5, b=1: K = (1*6*2)/4^2 = 3/4 by direct evaluation of the
        // formula; printed = (3/4)^(-1/4). Rate equation: alpha = 1/2,
        // c = 1 * (1/2) * (3/2) = 3/4, A = (3/4)^(1/4).
        let c = corollary_constants(2.0, 5.0, 1.0).unwrap();
        let k: f64 = 0.75;
        assert_relative_eq!(c.printed, k.powf(-0.25), max_relative = 1e-14);
        assert_relative_eq!(c.rate_equation, k.powf(0.25), max_relative = 1e-12);
        assert_relative_eq!(c.rate_equation, 0.9306048591020996, max_relative = 1e-12);
    }

    #[test]
    fn works_in_f32_too() {
        let a = solve_blowup_constant(2.0f32, 3.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!((a - 2.0f32.sqrt()).abs() < 1e-5);
    }

    #[test]
    fn monotone_in_weights() {
        // Implicit-function sign check: A decreases in Q, increases in R.
        let base = solve_blowup_constant(2.0, 3.0, 0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let more_q = solve_blowup_constant(2.0, 3.0, 0.5, 1.0, 1.5, 1.0, 1.0, 1.0, 1.0).unwrap();
        let more_r = solve_blowup_constant(2.0, 3.0, 0.5, 1.0, 1.0, 1.5, 1.0, 1.0, 1.0).unwrap();
        assert!(more_q < base);
        assert!(more_r > base);
    }
}
