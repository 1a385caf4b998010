//! Closed-form constructions for two graded patches and exponent extraction.
//!
//! * Case A: semi-infinite patch with stiffness `h x²` under a self-balanced
//!   traction, solved through a Carleman problem for a strip.
//! * Case B: wedge patch `E = h x` on `(0, 1)` glued by a layer of compliance
//!   `k0 x` and pulled by a point force `P` at `x = 1`, solved as a
//!   Wiener–Hopf (Riemann) problem.

mod case_a;
mod case_b;
mod complex;
mod fourier;
mod slope;

pub use case_a::{
    case_a_forcing, case_a_stress, strip_factorization, CaseAConfig, CaseASolution, CaseAStress, SineTraction, Traction, ZeroTraction,
};
pub use case_b::{
    case_b_exponent, case_b_stress, riemann_factorization, CaseBConfig, CaseBExponent, CaseBSolution, CaseBStress,
};
pub use complex::ln_gamma_complex;
pub use slope::{slope_fit, SlopeFit};

use num_complex::Complex64;

/// Sampled factorization function and its boundary-relation diagnostics.
#[derive(Debug, Clone)]
pub struct FactorizationTable {
    /// Abscissae `s` on the boundary line(s).
    pub abscissae: Vec<f64>,
    /// Factor just above the contour (`X⁺(s)`, or `X0(s + i)` for the strip).
    pub upper: Vec<Complex64>,
    /// Factor just below the contour (`X⁻(s)`, or `X0(s)` for the strip).
    pub lower: Vec<Complex64>,
    /// Symbol the ratio must reproduce.
    pub target: Vec<Complex64>,
    /// `|upper/lower - target| / |target|` per sample.
    pub residual: Vec<f64>,
    /// Winding number of the symbol along the whole line.
    pub winding: i64,
}

impl FactorizationTable {
    pub fn max_residual(&self) -> f64 {
        self.residual.iter().fold(0.0, |m, &r| m.max(r))
    }
}

/// Winding number of `f` along the real line sampled on `[-s_max, s_max]`,
/// assuming `arg f → 0` at both ends.
pub(crate) fn winding_number<F: Fn(f64) -> Complex64>(f: F, s_max: f64, samples: usize) -> i64 {
    let mut total = 0.0;
    let mut prev = f(-s_max).arg();
    for i in 1..=samples {
        let s = -s_max + 2.0 * s_max * i as f64 / samples as f64;
        let a = f(s).arg();
        let mut d = a - prev;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        total += d;
        prev = a;
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winding_counts_loops() {
        // (s - i)/(s + i) winds once around the origin along the real line
        let w = winding_number(|s| (Complex64::new(s, -1.0) / Complex64::new(s, 1.0)) * -1.0, 1e4, 200_000);
        assert_eq!(w.abs(), 1);
        assert_eq!(winding_number(|s| Complex64::new(2.0 + s.cos(), 0.3 * s.sin()), 50.0, 10_000), 0);
    }
}
