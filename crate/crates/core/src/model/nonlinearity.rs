//! Absorption and reaction nonlinearities.
//!
//! Two forms: an exact power law `coeff * s^exponent`, and a tabulated curve
//! interpolated piecewise-linearly in log-log space with an optional declared
//! power tail beyond the table hull. Queries below the hull extrapolate with
//! the slope of the first table segment, so `value(0+) -> 0` whenever that
//! slope is positive.

use crate::error::{CoreError, Result};
use crate::real::{cast, Real};

/// Which side of the logistic balance the function sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonlinearityKind {
    /// `f`: absorption, `f(0) = 0`, `f >= 0` on `[0, inf)`.
    AbsorptionF,
    /// `g`: reaction, `g > 0` on `(0, inf)`, may diverge as `s -> 0+`.
    ReactionG,
}

/// Functional form of the model.
#[derive(Debug, Clone, PartialEq)]
pub enum NonlinearityForm<T> {
    /// `value(s) = coeff * s^exponent` exactly.
    Power,
    /// Strictly increasing abscissae with finite nonnegative values; an
    /// optional tail exponent enables power extrapolation past the hull.
    Tabulated {
        table: Vec<(T, T)>,
        tail_exponent: Option<T>,
    },
}

/// Parametric nonlinearity with declared asymptote `(exponent, coeff)`.
///
/// For the power form the asymptote is the function itself; for tables it
/// describes the declared tail (`coeff` is the value scale at the hull end).
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearityModel<T> {
    kind: NonlinearityKind,
    form: NonlinearityForm<T>,
    /// `q` for absorption, `m` for reaction. For tabulated models this is
    /// the declared tail exponent (NaN when no tail was declared).
    exponent: T,
    /// `f_inf` or `g_inf`.
    asympt_coeff: T,
}

impl<T: Real> NonlinearityModel<T> {
    /// Exact power law `coeff * s^exponent`.
    pub fn power(kind: NonlinearityKind, exponent: T, coeff: T) -> Result<Self> {
        if !(coeff >= T::zero()) || !coeff.is_finite() {
            return Err(CoreError::InvalidModel(
                "asymptote coefficient must be finite and nonnegative".into(),
            ));
        }
        if kind == NonlinearityKind::AbsorptionF && !(exponent > T::zero()) {
            return Err(CoreError::InvalidModel(
                "absorption power law needs a positive exponent so that f(0)=0".into(),
            ));
        }
        Ok(Self {
            kind,
            form: NonlinearityForm::Power,
            exponent,
            asympt_coeff: coeff,
        })
    }

    /// Tabulated curve; `table` must be strictly increasing in `s` with
    /// finite nonnegative values (strictly positive for log interpolation).
    pub fn tabulated(
        kind: NonlinearityKind,
        table: Vec<(T, T)>,
        tail_exponent: Option<T>,
    ) -> Result<Self> {
        if table.len() < 2 {
            return Err(CoreError::InvalidModel("table needs at least 2 points".into()));
        }
        for w in table.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(CoreError::InvalidModel(
                    "table abscissae must be strictly increasing".into(),
                ));
            }
        }
        for &(s, v) in &table {
            if !(s > T::zero()) || !v.is_finite() || !(v > T::zero()) {
                return Err(CoreError::InvalidModel(
                    "table entries must have s > 0 and finite positive values".into(),
                ));
            }
        }
        let coeff = match tail_exponent {
            Some(e) => {
                let &(s_hi, v_hi) = table.last().unwrap();
                v_hi / s_hi.powf(e)
            }
            None => T::zero(),
        };
        Ok(Self {
            kind,
            form: NonlinearityForm::Tabulated {
                table,
                tail_exponent,
            },
            exponent: tail_exponent.unwrap_or_else(T::nan),
            asympt_coeff: coeff,
        })
    }

    pub fn kind(&self) -> NonlinearityKind {
        self.kind
    }

    pub fn form(&self) -> &NonlinearityForm<T> {
        &self.form
    }

    /// Declared growth exponent (`q` or `m`; tail exponent for tables).
    pub fn exponent(&self) -> T {
        self.exponent
    }

    /// Declared asymptote coefficient (`f_inf` or `g_inf`).
    pub fn asympt_coeff(&self) -> T {
        self.asympt_coeff
    }

    pub fn is_power(&self) -> bool {
        matches!(self.form, NonlinearityForm::Power)
    }

    /// Table hull `[s_min, s_max]`, or `None` for power laws.
    pub fn hull(&self) -> Option<(T, T)> {
        match &self.form {
            NonlinearityForm::Power => None,
            NonlinearityForm::Tabulated { table, .. } => {
                Some((table.first().unwrap().0, table.last().unwrap().0))
            }
        }
    }

    /// Evaluates the model at `s > 0`.
    pub fn eval(&self, s: T) -> Result<T> {
        if !(s > T::zero()) {
            return Err(CoreError::NonPositiveArgument(
                s.to_f64().unwrap_or(f64::NAN),
            ));
        }
        match &self.form {
            NonlinearityForm::Power => Ok(self.asympt_coeff * s.powf(self.exponent)),
            NonlinearityForm::Tabulated {
                table,
                tail_exponent,
            } => {
                let (s_lo, _) = table.first().copied().unwrap();
                let (s_hi, v_hi) = table.last().copied().unwrap();
                if s > s_hi {
                    let Some(tail) = tail_exponent else {
                        return Err(CoreError::OutsideTableHull {
                            query: s.to_f64().unwrap_or(f64::NAN),
                            lo: s_lo.to_f64().unwrap_or(f64::NAN),
                            hi: s_hi.to_f64().unwrap_or(f64::NAN),
                        });
                    };
                    return Ok(v_hi * (s / s_hi).powf(*tail));
                }
                if s < s_lo {
                    if tail_exponent.is_none() {
                        return Err(CoreError::OutsideTableHull {
                            query: s.to_f64().unwrap_or(f64::NAN),
                            lo: s_lo.to_f64().unwrap_or(f64::NAN),
                            hi: s_hi.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                    // Head extrapolation with the slope of the first segment.
                    let (s0, v0) = table[0];
                    let (s1, v1) = table[1];
                    let slope = (v1.ln() - v0.ln()) / (s1.ln() - s0.ln());
                    return Ok(v0 * (s / s0).powf(slope));
                }
                // Binary search for the segment, then log-log interpolation.
                let pos = table.partition_point(|&(x, _)| x <= s);
                let i = pos.min(table.len() - 1).max(1);
                let (sa, va) = table[i - 1];
                let (sb, vb) = table[i];
                if s == sa {
                    return Ok(va);
                }
                let t = (s.ln() - sa.ln()) / (sb.ln() - sa.ln());
                Ok((va.ln() * (T::one() - t) + vb.ln() * t).exp())
            }
        }
    }

    /// Derivative for the Newton linearization. Analytic for power laws,
    /// central finite difference on tables.
    pub fn derivative(&self, s: T) -> Result<T> {
        match &self.form {
            NonlinearityForm::Power => {
                if !(s > T::zero()) {
                    return Err(CoreError::NonPositiveArgument(
                        s.to_f64().unwrap_or(f64::NAN),
                    ));
                }
                Ok(self.asympt_coeff * self.exponent * s.powf(self.exponent - T::one()))
            }
            NonlinearityForm::Tabulated { .. } => {
                let h = cast::<T>(1e-6) * s;
                let hi = self.eval(s + h)?;
                let lo = self.eval((s - h).max(s * cast::<T>(0.5)))?;
                Ok((hi - lo) / (s + h - (s - h).max(s * cast::<T>(0.5))))
            }
        }
    }

    /// `value(s) / s^(p-1)`, the ratio driving every growth condition.
    pub fn ratio(&self, p: T, s: T) -> Result<T> {
        Ok(self.eval(s)? / s.powf(p - T::one()))
    }
}
