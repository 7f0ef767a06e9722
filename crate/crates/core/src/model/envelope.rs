//! Monotone-ratio envelopes of the nonlinearities.
//!
//! With `r(t) = value(t)/t^(p-1)`:
//!
//! * `envelope_sup_below`:  `s^(p-1) * sup{r(t), t <= s} + s^p`  (absorption
//!   from above, ratio made nondecreasing),
//! * `envelope_sup_above`:  `s^(p-1) * sup{r(t), t >= s} + 1`    (reaction
//!   from above, ratio made nonincreasing),
//! * `envelope_inf_above`:  `s^(p-1) * inf{r(t), t >= s}`        (absorption
//!   from below, ratio made nondecreasing).
//!
//! Power laws have monotone ratios, so their envelopes are closed-form. For
//! tabulated models the log-log interpolant has piecewise-monotone ratio,
//! hence extrema sit on table nodes (plus the query point); the scan over
//! nodes is exact for the interpolated curve. Behavior outside the hull
//! enters through the head slope of the first segment and the declared tail
//! exponent; without a declared tail the suffix scans are hull-truncated.

use crate::error::{CoreError, Result};
use crate::model::nonlinearity::{NonlinearityForm, NonlinearityModel};
use crate::real::Real;

/// Supremum of `r(t)` over `0 < t <= s`.
fn prefix_ratio_sup<T: Real>(model: &NonlinearityModel<T>, p: T, s: T) -> Result<T> {
    let pm1 = p - T::one();
    match model.form() {
        NonlinearityForm::Power => {
            let growth = model.exponent() - pm1;
            if growth < T::zero() {
                // ratio blows up as t -> 0+.
                Ok(T::infinity())
            } else {
                model.ratio(p, s)
            }
        }
        NonlinearityForm::Tabulated { table, .. } => {
            let (s0, v0) = table[0];
            let (s1, v1) = table[1];
            let head_slope = (v1.ln() - v0.ln()) / (s1.ln() - s0.ln());
            if head_slope < pm1 {
                return Ok(T::infinity());
            }
            let mut sup = model.ratio(p, s)?;
            for &(t, v) in table.iter().take_while(|&&(t, _)| t <= s) {
                sup = sup.max(v / t.powf(pm1));
            }
            Ok(sup)
        }
    }
}

/// Supremum of `r(t)` over `t >= s`; `Err` when unbounded.
fn suffix_ratio_sup<T: Real>(model: &NonlinearityModel<T>, p: T, s: T) -> Result<T> {
    let pm1 = p - T::one();
    match model.form() {
        NonlinearityForm::Power => {
            if model.exponent() > pm1 && model.asympt_coeff() > T::zero() {
                Err(CoreError::UnboundedSuffixSupremum)
            } else {
                model.ratio(p, s)
            }
        }
        NonlinearityForm::Tabulated {
            table,
            tail_exponent,
        } => {
            if let Some(tail) = tail_exponent {
                if *tail > pm1 {
                    return Err(CoreError::UnboundedSuffixSupremum);
                }
            }
            let mut sup = model.ratio(p, s)?;
            for &(t, v) in table.iter().skip_while(|&&(t, _)| t < s) {
                sup = sup.max(v / t.powf(pm1));
            }
            Ok(sup)
        }
    }
}

/// Infimum of `r(t)` over `t >= s`.
fn suffix_ratio_inf<T: Real>(model: &NonlinearityModel<T>, p: T, s: T) -> Result<T> {
    let pm1 = p - T::one();
    match model.form() {
        NonlinearityForm::Power => {
            if model.exponent() < pm1 {
                Ok(T::zero())
            } else {
                model.ratio(p, s)
            }
        }
        NonlinearityForm::Tabulated {
            table,
            tail_exponent,
        } => {
            if let Some(tail) = tail_exponent {
                if *tail < pm1 {
                    // declared tail decays relative to t^(p-1): infimum 0.
                    return Ok(T::zero());
                }
            }
            let mut inf = model.ratio(p, s)?;
            for &(t, v) in table.iter().skip_while(|&&(t, _)| t < s) {
                inf = inf.min(v / t.powf(pm1));
            }
            Ok(inf)
        }
    }
}

/// Upper envelope of the absorption: ratio-monotone majorant plus `s^p`.
pub fn envelope_sup_below<T: Real>(f: &NonlinearityModel<T>, p: T, s: T) -> Result<T> {
    if !(s > T::zero()) {
        return Err(CoreError::NonPositiveArgument(
            s.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let sup = prefix_ratio_sup(f, p, s)?;
    Ok(s.powf(p - T::one()) * sup + s.powf(p))
}

/// Upper envelope of the reaction: ratio-antitone majorant plus one.
pub fn envelope_sup_above<T: Real>(g: &NonlinearityModel<T>, p: T, s: T) -> Result<T> {
    if !(s > T::zero()) {
        return Err(CoreError::NonPositiveArgument(
            s.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let sup = suffix_ratio_sup(g, p, s)?;
    Ok(s.powf(p - T::one()) * sup + T::one())
}

/// Lower envelope of the absorption: ratio-monotone minorant.
pub fn envelope_inf_above<T: Real>(f: &NonlinearityModel<T>, p: T, s: T) -> Result<T> {
    if !(s > T::zero()) {
        return Err(CoreError::NonPositiveArgument(
            s.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let inf = suffix_ratio_inf(f, p, s)?;
    Ok(s.powf(p - T::one()) * inf)
}
