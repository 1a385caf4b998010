//! Prescribed patch loads `q0(x)` with exact principal-value transforms.

use std::fmt::Debug;

use crate::error::Result;
use crate::quadrature::cauchy_pv;
use crate::special::gamma;

/// Load `q0(x)` applied to the patch on `[-1, 1]`.
pub trait Forcing: Debug + Send + Sync {
    fn value(&self, x: f64) -> f64;

    fn derivative(&self, x: f64) -> f64;

    /// `√(1-x²) q0'(x)`, bounded even when `q0'` blows up at the ends.
    fn weighted_derivative(&self, x: f64) -> f64 {
        (1.0 - x * x).max(0.0).sqrt() * self.derivative(x)
    }

    /// `PV ∫ q0(y)/(y - x) dy` over `[-1, 1]`.
    fn hilbert(&self, x: f64) -> Result<f64> {
        cauchy_pv(|y| self.value(y), 0.0, 0.0, x)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(j, &c)| j as f64 * c).collect()
}

/// `PV ∫ w(y) p(y)/(y - x) dy` for a polynomial `p` given the moments of `w`
/// and the transform `h0(x)` of `w` itself.
fn polynomial_pv(coeffs: &[f64], moments: impl Fn(usize) -> f64, h0: f64, x: f64) -> f64 {
    // y^j = (y^j - x^j) + x^j and (y^j - x^j)/(y - x) = Σ_{i<j} y^i x^{j-1-i}
    let mut total = horner(coeffs, x) * h0;
    for (j, &c) in coeffs.iter().enumerate().skip(1) {
        if c == 0.0 {
            continue;
        }
        let mut s = 0.0;
        for i in 0..j {
            s += moments(i) * x.powi((j - 1 - i) as i32);
        }
        total += c * s;
    }
    total
}

/// `q0(x) = √(1-x²) r(x)` with `r(x) = Σ coeffs[j] x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtWeighted {
    pub coeffs: Vec<f64>,
}

impl SqrtWeighted {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// `A √(1-x²)`.
    pub fn semicircle(amplitude: f64) -> Self {
        Self { coeffs: vec![amplitude] }
    }

    /// `∫ y^i √(1-y²) dy` over `[-1, 1]`.
    fn moment(i: usize) -> f64 {
        if i % 2 == 1 {
            return 0.0;
        }
        let p = (i / 2) as f64;
        gamma(p + 0.5).unwrap() * gamma(1.5).unwrap() / gamma(p + 2.0).unwrap()
    }
}

impl Forcing for SqrtWeighted {
    fn value(&self, x: f64) -> f64 {
        (1.0 - x * x).max(0.0).sqrt() * horner(&self.coeffs, x)
    }

    fn derivative(&self, x: f64) -> f64 {
        let s = (1.0 - x * x).max(0.0).sqrt();
        let r = horner(&self.coeffs, x);
        let dr = horner(&derivative_coeffs(&self.coeffs), x);
        -x * r / s + s * dr
    }

    fn weighted_derivative(&self, x: f64) -> f64 {
        let r = horner(&self.coeffs, x);
        let dr = horner(&derivative_coeffs(&self.coeffs), x);
        -x * r + (1.0 - x * x) * dr
    }

    fn hilbert(&self, x: f64) -> Result<f64> {
        Ok(polynomial_pv(&self.coeffs, Self::moment, -std::f64::consts::PI * x, x))
    }
}

/// Smooth polynomial load `q0(x) = Σ coeffs[j] x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    fn moment(i: usize) -> f64 {
        if i % 2 == 1 {
            0.0
        } else {
            2.0 / (i as f64 + 1.0)
        }
    }
}

impl Forcing for Polynomial {
    fn value(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }

    fn derivative(&self, x: f64) -> f64 {
        horner(&derivative_coeffs(&self.coeffs), x)
    }

    fn hilbert(&self, x: f64) -> Result<f64> {
        if x.abs() >= 1.0 {
            return crate::error::domain("principal value needs |x| < 1 for a polynomial load");
        }
        Ok(polynomial_pv(&self.coeffs, Self::moment, ((1.0 - x) / (1.0 + x)).ln(), x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn semicircle_transform() {
        let f = SqrtWeighted::semicircle(1e5);
        assert_relative_eq!(f.hilbert(0.3).unwrap(), -std::f64::consts::PI * 0.3e5, max_relative = 1e-14);
        assert_relative_eq!(f.weighted_derivative(0.4), -0.4e5);
    }

    #[test]
    fn closed_forms_match_numeric_pv() {
        let f = SqrtWeighted::new(vec![1.0, -0.5, 2.0, 0.25]);
        let p = Polynomial::new(vec![0.3, 1.0, -2.0, 0.0, 0.7]);
        for &x in &[-0.8, -0.2, 0.1, 0.55, 0.9] {
            let want = cauchy_pv(|y| horner(&f.coeffs, y), 0.5, 0.5, x).unwrap();
            assert!((f.hilbert(x).unwrap() - want).abs() < 1e-8, "x={x}");
            let want = cauchy_pv(|y| p.value(y), 0.0, 0.0, x).unwrap();
            assert!((p.hilbert(x).unwrap() - want).abs() < 1e-9, "x={x}");
        }
    }
}
