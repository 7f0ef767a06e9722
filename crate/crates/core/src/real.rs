//! Generic scalar abstraction: the numerics are written once over [`Real`]
//! and instantiated at `f32` or `f64` (the crate root exports `f64` aliases).

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the solvers and models are generic over.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in Real type")
}

/// `max(1, |x|)`, the usual floor for relative tolerances.
#[inline]
pub fn unit_floor<T: Real>(x: T) -> T {
    x.abs().max(T::one())
}
