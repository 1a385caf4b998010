//! Panel-wise interpolation of smooth transforms and Fourier-type quadrature
//! of the interpolant against `e^{ikσ}`.

use crate::quadrature::gauss_legendre;
use num_complex::Complex64;

const NODES: usize = 16;
const GL_ORDER: usize = 10;

/// Piecewise Chebyshev interpolant of a complex function of one real variable.
#[derive(Debug, Clone)]
pub(crate) struct Panels {
    breaks: Vec<f64>,
    values: Vec<[Complex64; NODES]>,
}

fn cheb_nodes() -> [f64; NODES] {
    let mut x = [0.0; NODES];
    for (j, v) in x.iter_mut().enumerate() {
        *v = -(std::f64::consts::PI * j as f64 / (NODES - 1) as f64).cos();
    }
    x
}

/// Smallest `|k S|` at which a panel end `S` gets an asymptotic tail.
const TAIL_PHASE: f64 = 100.0;

impl Panels {
    pub(crate) fn build<F: FnMut(f64) -> Complex64>(breaks: Vec<f64>, mut f: F) -> Self {
        let nodes = cheb_nodes();
        let values = breaks
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let mut v = [Complex64::new(0.0, 0.0); NODES];
                for (slot, &x) in v.iter_mut().zip(&nodes) {
                    *slot = f(0.5 * (a + b) + 0.5 * (b - a) * x);
                }
                v
            })
            .collect();
        Self { breaks, values }
    }

    /// Interpolation nodes of [`Panels::build`] on `breaks`, in order.
    pub(crate) fn nodes_of(breaks: &[f64]) -> impl Iterator<Item = f64> + '_ {
        let nodes = cheb_nodes();
        breaks.windows(2).flat_map(move |w| nodes.map(|x| 0.5 * (w[0] + w[1]) + 0.5 * (w[1] - w[0]) * x))
    }

    /// Interpolant from node values listed in the order of [`Panels::nodes_of`].
    pub(crate) fn from_values<V: IntoIterator<Item = Complex64>>(breaks: Vec<f64>, values: V) -> Self {
        let mut it = values.into_iter();
        Self::build(breaks, |_| it.next().expect("one value per node"))
    }

    /// Geometric breaks `0, d, d r, d r², …` up to `end`.
    pub(crate) fn geometric(first: f64, ratio: f64, end: f64) -> Vec<f64> {
        let mut b = vec![0.0, first];
        while *b.last().unwrap() < end {
            let next = b.last().unwrap() * ratio;
            b.push(next.min(end));
        }
        b
    }

    /// Breaks symmetric about the origin built from [`Panels::geometric`].
    pub(crate) fn symmetric(first: f64, ratio: f64, end: f64) -> Vec<f64> {
        let half = Self::geometric(first, ratio, end);
        let mut b: Vec<f64> = half.iter().skip(1).rev().map(|x| -x).collect();
        b.extend(half);
        b
    }

    /// New interpolant on the same panels with node values `f(x, value)`.
    pub(crate) fn map<F: FnMut(f64, Complex64) -> Complex64>(&self, mut f: F) -> Self {
        self.combine(self, |x, a, _| f(x, a))
    }

    /// Node-wise combination of two interpolants on identical panels.
    pub(crate) fn combine<F: FnMut(f64, Complex64, Complex64) -> Complex64>(&self, other: &Self, mut f: F) -> Self {
        assert_eq!(self.breaks, other.breaks, "panels differ");
        let nodes = cheb_nodes();
        let values = self
            .breaks
            .windows(2)
            .zip(self.values.iter().zip(&other.values))
            .map(|(w, (va, vb))| {
                let (a, b) = (w[0], w[1]);
                let mut v = [Complex64::new(0.0, 0.0); NODES];
                for (j, slot) in v.iter_mut().enumerate() {
                    *slot = f(0.5 * (a + b) + 0.5 * (b - a) * nodes[j], va[j], vb[j]);
                }
                v
            })
            .collect();
        Self { breaks: self.breaks.clone(), values }
    }

    /// Largest node magnitude on the outermost panels, relative to the overall largest.
    pub(crate) fn edge_ratio(&self) -> f64 {
        let max = |v: &[Complex64; NODES]| v.iter().fold(0.0f64, |m, x| m.max(x.norm()));
        let all = self.values.iter().map(max).fold(0.0, f64::max);
        let edge = max(&self.values[0]).max(max(self.values.last().unwrap()));
        if all == 0.0 {
            0.0
        } else {
            edge / all
        }
    }

    pub(crate) fn lower(&self) -> f64 {
        self.breaks[0]
    }

    pub(crate) fn upper(&self) -> f64 {
        *self.breaks.last().unwrap()
    }

    pub(crate) fn eval(&self, x: f64) -> Complex64 {
        let n = self.values.len();
        let p = self.breaks.partition_point(|&b| b <= x).clamp(1, n) - 1;
        let (a, b) = (self.breaks[p], self.breaks[p + 1]);
        let u = (2.0 * x - a - b) / (b - a);
        let nodes = cheb_nodes();
        let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
        for (j, (&xj, &fj)) in nodes.iter().zip(&self.values[p]).enumerate() {
            let d = u - xj;
            if d == 0.0 {
                return fj;
            }
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == NODES - 1 {
                w *= 0.5;
            }
            num += fj * (w / d);
            den += w / d;
        }
        num / den
    }

    fn derivative(&self, x: f64) -> Complex64 {
        let h = 1e-5 * x.abs().max(1.0);
        let (lo, hi) = ((x - h).max(self.lower()), (x + h).min(self.upper()));
        (self.eval(hi) - self.eval(lo)) / (hi - lo)
    }

    /// `∫_lo^hi f(σ) e^{ikσ} dσ` over the interpolant, `[lo, hi]` inside the panels.
    pub(crate) fn oscillatory(&self, k: f64, lo: f64, hi: f64) -> Complex64 {
        let rule = gauss_legendre::<f64>(GL_ORDER).expect("order >= 1");
        let mut acc = Complex64::new(0.0, 0.0);
        for w in self.breaks.windows(2) {
            let (a, b) = (w[0].max(lo), w[1].min(hi));
            if b <= a {
                continue;
            }
            let m = ((b - a) * k.abs() / 5.0).ceil().max(1.0) as usize;
            let step = (b - a) / m as f64;
            for i in 0..m {
                let (p, q) = (a + i as f64 * step, a + (i + 1) as f64 * step);
                let half = 0.5 * (q - p);
                for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
                    let s = p + half * (x + 1.0);
                    acc += self.eval(s) * Complex64::from_polar(wt * half, k * s);
                }
            }
        }
        acc
    }

    /// `∫_S^∞ f(σ) e^{ikσ} dσ` by two integrations by parts at `S`.
    pub(crate) fn upper_tail(&self, k: f64, s: f64) -> Complex64 {
        let ik = Complex64::new(0.0, k);
        -Complex64::from_polar(1.0, k * s) * (self.eval(s) / ik - self.derivative(s) / (ik * ik))
    }

    /// `∫_{-∞}^{S} f(σ) e^{ikσ} dσ` by two integrations by parts at `S`.
    pub(crate) fn lower_tail(&self, k: f64, s: f64) -> Complex64 {
        let ik = Complex64::new(0.0, k);
        Complex64::from_polar(1.0, k * s) * (self.eval(s) / ik - self.derivative(s) / (ik * ik))
    }

    /// Whole-support Fourier integral `∫ f(σ) e^{ikσ} dσ`, cutting the panels at
    /// `±cut/|k|` (at least `min_cut`) and replacing what lies beyond by the
    /// asymptotic tails.
    pub(crate) fn fourier(&self, k: f64, cut: f64, min_cut: f64) -> Complex64 {
        let span = if k == 0.0 { f64::INFINITY } else { (cut / k.abs()).max(min_cut) };
        let lo = if self.lower() < 0.0 { self.lower().max(-span) } else { self.lower() };
        let hi = self.upper().min(span);
        let mut v = self.oscillatory(k, lo, hi);
        // past the last panel the tail is only added once it oscillates fast
        // enough for the expansion to hold
        if hi < self.upper() || k.abs() * hi.abs() > TAIL_PHASE {
            v += self.upper_tail(k, hi);
        }
        if lo > self.lower() || k.abs() * lo.abs() > TAIL_PHASE {
            v += self.lower_tail(k, lo);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_smooth_functions() {
        let f = |x: f64| Complex64::new((1.0 + x * x).recip(), x.ln_1p() / (1.0 + x));
        let p = Panels::build(Panels::geometric(0.05, 1.3, 200.0), f);
        for &x in &[0.0, 0.013, 0.7, 3.3, 57.0, 199.0] {
            assert!((p.eval(x) - f(x)).norm() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn fourier_of_lorentzian() {
        // ∫ e^{ikσ}/(1+σ²) dσ = π e^{-|k|}
        let p = Panels::build(Panels::symmetric(0.05, 1.25, 1e5), |x| Complex64::new(1.0 / (1.0 + x * x), 0.0));
        // truncation at 1e5 costs 2e-5 when there is no oscillation to use
        assert!((p.fourier(0.0, 400.0, 50.0).re - std::f64::consts::PI).abs() < 3e-5);
        for &k in &[0.01, 0.5, 3.0, 12.0] {
            let v = p.fourier(k, 400.0, 50.0);
            let exact = std::f64::consts::PI * (-k.abs()).exp();
            assert!((v.re - exact).abs() < 1e-6 && v.im.abs() < 1e-8, "k={k} v={v}");
        }
    }
}
