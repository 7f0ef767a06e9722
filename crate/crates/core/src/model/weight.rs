//! Boundary weight laws `coeff * d^(-exponent) + offset` as functions of the
//! distance `d` to the blow-up boundary.
//!
//! The same law covers both weights: for `b` the pair `(coeff, exponent)` is
//! `(Q, gamma)` with `gamma <= 0`, for `a` it is `(R, eta)`. The offset is
//! the interior constant part; it may be negative for the reaction weight so
//! that `essinf a < 0` configurations are expressible (the reaction weight
//! can change sign), while absorption weights must stay nonnegative.

use crate::error::{CoreError, Result};
use crate::real::Real;

/// Power-law boundary weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightModel<T> {
    /// Boundary coefficient (`Q` or `R`), nonnegative.
    pub coeff: T,
    /// Boundary exponent (`gamma` or `eta`): the weight behaves like
    /// `coeff * d^(-exponent)` as `d -> 0`.
    pub boundary_exponent: T,
    /// Constant interior part.
    pub offset: T,
}

impl<T: Real> WeightModel<T> {
    pub fn new(coeff: T, boundary_exponent: T, offset: T) -> Result<Self> {
        if !(coeff >= T::zero()) || !coeff.is_finite() {
            return Err(CoreError::InvalidModel(
                "weight coefficient must be finite and nonnegative".into(),
            ));
        }
        if !boundary_exponent.is_finite() || !offset.is_finite() {
            return Err(CoreError::InvalidModel(
                "weight exponent and offset must be finite".into(),
            ));
        }
        Ok(Self {
            coeff,
            boundary_exponent,
            offset,
        })
    }

    /// A constant weight (zero boundary term).
    pub fn constant(value: T) -> Result<Self> {
        Self::new(T::zero(), T::zero(), value)
    }

    /// Evaluates the weight at distance `d > 0`.
    pub fn eval(&self, d: T) -> Result<T> {
        if !(d > T::zero()) {
            return Err(CoreError::NonPositiveArgument(
                d.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(self.coeff * d.powf(-self.boundary_exponent) + self.offset)
    }

    /// Essential infimum over `d` in `(0, d_max]`. The power part is
    /// monotone, so the infimum sits at one end of the range.
    pub fn essinf(&self, d_max: T) -> T {
        if self.coeff == T::zero() || self.boundary_exponent == T::zero() {
            return self.coeff + self.offset;
        }
        if self.boundary_exponent > T::zero() {
            // d^(-e) decreasing in d: infimum at d = d_max.
            self.coeff * d_max.powf(-self.boundary_exponent) + self.offset
        } else {
            // increasing in d: infimum in the limit d -> 0+.
            self.offset
        }
    }

    /// Essential supremum over `(0, d_max]`; `+inf` when the weight is
    /// unbounded at the boundary.
    pub fn esssup(&self, d_max: T) -> T {
        if self.coeff == T::zero() || self.boundary_exponent == T::zero() {
            return self.coeff + self.offset;
        }
        if self.boundary_exponent > T::zero() {
            T::infinity()
        } else {
            self.coeff * d_max.powf(-self.boundary_exponent) + self.offset
        }
    }

    /// The boundary limit of `d^exponent * weight(d)`, i.e. the `Q(x0)` or
    /// `R(x0)` this law realizes. Finite only when the offset does not
    /// dominate; `None` when the declared exponent is inconsistent with the
    /// offset (negative exponent with a nonzero offset).
    pub fn boundary_limit(&self) -> Option<T> {
        if self.boundary_exponent == T::zero() {
            Some(self.coeff + self.offset)
        } else if self.boundary_exponent > T::zero() {
            Some(self.coeff)
        } else if self.offset == T::zero() {
            Some(self.coeff)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_weight_evaluates() {
        let b = WeightModel::new(1.0f64, 0.0, 0.0).unwrap();
        assert_relative_eq!(b.eval(0.01).unwrap(), 1.0);
        assert!(b.eval(0.0).is_err());
    }

    #[test]
    fn vanishing_boundary_weight() {
        // gamma = -1: b = Q d, vanishes at the boundary; essinf is the offset.
        let b = WeightModel::new(2.0f64, -1.0, 0.5).unwrap();
        assert_relative_eq!(b.eval(0.25).unwrap(), 1.0);
        assert_relative_eq!(b.essinf(1.0), 0.5);
        assert_relative_eq!(b.esssup(1.0), 2.5);
        assert_eq!(b.boundary_limit(), None);
        let pure = WeightModel::new(2.0f64, -1.0, 0.0).unwrap();
        assert_relative_eq!(pure.boundary_limit().unwrap(), 2.0);
    }

    #[test]
    fn singular_reaction_weight() {
        // eta = 3: a = R d^(-3), unbounded at the boundary.
        let a = WeightModel::new(1.0f64, 3.0, 0.0).unwrap();
        assert_relative_eq!(a.eval(0.5).unwrap(), 8.0);
        assert!(a.esssup(1.0).is_infinite());
        assert_relative_eq!(a.essinf(2.0), 0.125);
        assert_relative_eq!(a.boundary_limit().unwrap(), 1.0);
    }

    #[test]
    fn negative_offset_gives_negative_essinf() {
        let a = WeightModel::new(0.0f64, 0.0, -1.0).unwrap();
        assert_relative_eq!(a.essinf(1.0), -1.0);
        assert_relative_eq!(a.eval(0.3).unwrap(), -1.0);
    }
}
