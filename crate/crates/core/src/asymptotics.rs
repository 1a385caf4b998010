//! A-priori endpoint exponents of the contact stress.
//!
//! With stiffness `E(x) = (1-x²)^ω b0(x)` the stress behaves like
//! `(1-x²)^α` at the patch ends. A strongly degenerate stiffness (`ω > 2`)
//! fixes `α = ω - 1`; otherwise `α` is only known to lie in `[0, 1]`.

use std::fmt;

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Admissible endpoint exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentClass<T> {
    Point(T),
    /// The closed interval `[0, 1]`.
    Interval,
    /// The open interval `(0, 1)`.
    OpenInterval,
}

impl<T: Real> ExponentClass<T> {
    pub fn contains(&self, alpha: T) -> bool {
        match *self {
            ExponentClass::Point(a) => a == alpha,
            ExponentClass::Interval => alpha >= T::zero() && alpha <= T::one(),
            ExponentClass::OpenInterval => alpha > T::zero() && alpha < T::one(),
        }
    }
}

impl<T: Real> fmt::Display for ExponentClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentClass::Point(a) => write!(f, "point {a}"),
            ExponentClass::Interval => write!(f, "interval 0 1"),
            ExponentClass::OpenInterval => write!(f, "open-interval 0 1"),
        }
    }
}

/// Class of `α` for the stiffness exponent `ω >= 0`.
pub fn classify<T: Real>(omega: T) -> Result<ExponentClass<T>> {
    if !(omega >= T::zero()) {
        return domain(format!("stiffness exponent must be non-negative, got {omega}"));
    }
    if omega > T::c(2.0) {
        Ok(ExponentClass::Point(omega - T::one()))
    } else {
        Ok(ExponentClass::Interval)
    }
}

/// Class of `α` for `E(x) = (1-x²)^{n+1/2} b0(x)`.
pub fn classify_half_integer<T: Real>(n: usize) -> ExponentClass<T> {
    if n >= 2 {
        ExponentClass::Point(T::n(n) - T::c(0.5))
    } else {
        ExponentClass::OpenInterval
    }
}
