//! Adaptive Gauss–Kronrod integration for real and complex integrands, plus
//! half-line helpers used by the transform pipelines.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Values an integrand may produce.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<V: Integrand, F: FnMut(f64) -> V>(f: &mut F, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    let kv = k * h;
    let err = (kv - g * h).magnitude();
    (kv, err)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quad<V> {
    pub value: V,
    pub error: f64,
}

/// Globally adaptive G7K15 integration of `f` over `[a, b]`.
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`
/// or after `max_intervals` subdivisions.
pub fn adaptive<V: Integrand, F: FnMut(f64) -> V>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Quad<V> {
    const MAX_INTERVALS: usize = 4000;
    if a == b {
        return Quad { value: V::zero(), error: 0.0 };
    }
    let (v0, e0) = gk15(&mut f, a, b);
    let mut intervals = vec![(a, b, v0, e0)];
    loop {
        let total = intervals.iter().fold(V::zero(), |acc, iv| acc + iv.2);
        let err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if err <= abs_tol.max(rel_tol * total.magnitude()) || intervals.len() >= MAX_INTERVALS {
            return Quad { value: total, error: err };
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, iv)| if iv.3 > best.1 { (i, iv.3) } else { best });
        let (lo, hi, _, _) = intervals.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Quad { value: total, error: err };
        }
        let (vl, el) = gk15(&mut f, lo, mid);
        let (vr, er) = gk15(&mut f, mid, hi);
        intervals.push((lo, mid, vl, el));
        intervals.push((mid, hi, vr, er));
    }
}

/// `∫_a^∞ f(x) dx` through the map `x = a + u/(1-u)`.
pub fn adaptive_to_infinity<V: Integrand, F: FnMut(f64) -> V>(
    mut f: F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Quad<V> {
    adaptive(
        |u| {
            if u >= 1.0 {
                return V::zero();
            }
            let d = 1.0 - u;
            f(a + u / d) * (1.0 / (d * d))
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
    )
}

/// Fixed composite Gauss–Legendre rule on `[a, b]` with `panels` panels.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CompositeRule {
    pub fn new(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let base = crate::quadrature::gauss_legendre::<f64>(order).expect("order >= 1");
        Self::from_breaks(&linspace(a, b, panels + 1), &base)
    }

    pub fn from_breaks(breaks: &[f64], base: &crate::quadrature::QuadratureRule<f64>) -> Self {
        let mut nodes = Vec::with_capacity(base.len() * breaks.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            for (&x, &wt) in base.nodes.iter().zip(&base.weights) {
                nodes.push(lo + half * (x + 1.0));
                weights.push(wt * half);
            }
        }
        Self { nodes, weights }
    }

    pub fn integrate<V: Integrand, F: FnMut(f64) -> V>(&self, mut f: F) -> V {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(V::zero(), |acc, (&x, &w)| acc + f(x) * w)
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let q = adaptive(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12, 1e-12);
        assert!((q.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn half_line() {
        let q = adaptive_to_infinity(|x: f64| (-x).exp(), 0.0, 1e-13, 1e-13);
        assert!((q.value - 1.0).abs() < 1e-11);
        let q = adaptive_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, 1e-12, 1e-12);
        assert!((q.value - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn complex_integrand() {
        let q = adaptive(|x: f64| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 1e-13, 1e-13);
        assert!((q.value - Complex64::new(0.0, 2.0)).norm() < 1e-11);
    }

    #[test]
    fn composite_rule_exp() {
        let r = CompositeRule::new(0.0, 1.0, 4, 8);
        let v: f64 = r.integrate(f64::exp);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
    }
}
