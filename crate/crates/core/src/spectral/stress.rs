//! Contact stress from the spectral coefficients.

use super::{Ansatz, ProblemConfig, SpectralSolution};
use crate::error::{domain, Result};
use crate::quadrature::gauss_jacobi_rule;
use crate::special::jacobi;

/// Sampled tangential contact stress.
#[derive(Debug, Clone)]
pub struct StressField {
    pub xs: Vec<f64>,
    pub times: Vec<f64>,
    /// `q(t, x) = φ'(t, x) + q0(x) H(t - t0)`, indexed `[time][x]`.
    pub values: Vec<Vec<f64>>,
    /// `φ'(t, x)`.
    pub perturbation: Vec<Vec<f64>>,
    /// `φ(t, x) = ∫_{-1}^{x} φ'(t, y) dy`.
    pub primitive: Vec<Vec<f64>>,
    /// `φ(t, 1)` per time, zero up to rounding.
    pub end_primitive: Vec<f64>,
    /// `∫ φ'(t, y) dy` per time by Gauss–Jacobi quadrature.
    pub equilibrium: Vec<f64>,
    /// Exponent `α` of `(1-x²)^α` at the patch ends.
    pub endpoint_exponent: f64,
}

impl StressField {
    pub fn max_abs(&self, time_index: usize) -> f64 {
        self.values[time_index].iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn series(ansatz: Ansatz, coeffs: &[f64], x: f64) -> (f64, f64) {
    let a = ansatz.basis_parameter();
    let w = (1.0 - x * x).max(0.0);
    let mut d = 0.0;
    let mut p = 0.0;
    for (i, &c) in coeffs.iter().enumerate() {
        let k = i + 1;
        d += c * jacobi(a, a, k, x);
        p += c / (2.0 * k as f64) * jacobi(a + 1.0, a + 1.0, k - 1, x);
    }
    (w.powf(a) * d, -w.powf(a + 1.0) * p)
}

/// Stress at time `t` on the grid `xs`.
pub fn reconstruct_stress(
    solution: &SpectralSolution,
    config: &ProblemConfig,
    xs: &[f64],
    t: f64,
) -> Result<StressField> {
    let coeffs = solution
        .at(t)
        .ok_or_else(|| crate::Error::Domain(format!("solution has no slice at t = {t}")))?;
    reconstruct_slices(solution.ansatz, &[(t, coeffs)], config, xs)
}

/// Stress at every time of the solution.
pub fn reconstruct_all(solution: &SpectralSolution, config: &ProblemConfig, xs: &[f64]) -> Result<StressField> {
    let slices: Vec<(f64, &[f64])> =
        solution.times.iter().zip(&solution.coefficients).map(|(&t, c)| (t, c.as_slice())).collect();
    reconstruct_slices(solution.ansatz, &slices, config, xs)
}

fn reconstruct_slices(
    ansatz: Ansatz,
    slices: &[(f64, &[f64])],
    config: &ProblemConfig,
    xs: &[f64],
) -> Result<StressField> {
    if xs.iter().any(|x| x.abs() > 1.0) {
        return domain("stress grid must lie in [-1, 1]");
    }
    let a = ansatz.basis_parameter();
    let rule = gauss_jacobi_rule(a, a, 64.max(slices.first().map_or(0, |s| s.1.len()) + 8))?;
    let mut field = StressField {
        xs: xs.to_vec(),
        times: Vec::new(),
        values: Vec::new(),
        perturbation: Vec::new(),
        primitive: Vec::new(),
        end_primitive: Vec::new(),
        equilibrium: Vec::new(),
        endpoint_exponent: ansatz.endpoint_exponent(),
    };
    for &(t, coeffs) in slices {
        let step = if t >= config.load_instant { 1.0 } else { 0.0 };
        let mut q = Vec::with_capacity(xs.len());
        let mut dphi = Vec::with_capacity(xs.len());
        let mut phi = Vec::with_capacity(xs.len());
        for &x in xs {
            let (d, p) = series(ansatz, coeffs, x);
            dphi.push(d);
            phi.push(p);
            q.push(d + step * config.forcing.value(x));
        }
        field.times.push(t);
        field.values.push(q);
        field.perturbation.push(dphi);
        field.primitive.push(phi);
        field.end_primitive.push(series(ansatz, coeffs, 1.0).1);
        field.equilibrium.push(rule.integrate(|x| {
            coeffs.iter().enumerate().map(|(i, &c)| c * jacobi(a, a, i + 1, x)).sum::<f64>()
        }));
    }
    Ok(field)
}
