//! Scalar abstraction shared by the special-function and quadrature code.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display};

/// Real floating-point type usable by the generic numerical kernels (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + std::ops::AddAssign + std::ops::SubAssign + std::ops::MulAssign + std::ops::DivAssign + Copy + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` constant.
    #[inline]
    fn c(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 constant representable")
    }

    /// Conversion from a count or index.
    #[inline]
    fn n(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("index representable")
    }

    #[inline]
    fn to_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
