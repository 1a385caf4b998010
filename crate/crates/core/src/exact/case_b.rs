//! Wedge patch `E = h x` on `(0, 1)`, glue compliance `k0 x`, point force `P`
//! at the thick end.
//!
//! With `x = e^ξ` the problem becomes a Wiener–Hopf equation with symbol
//! `G01(s) = G1(s) / (k0h (1 + s²))`, `G1(s) = 1 + λh s coth(πs) + k0h s²`.
//! The transform of `v(ξ) = x τ(x)` is
//! `V(s) = -i P X⁻(s) / ((s - i) X⁻(0))` with `X⁻(0) = G01(0)^{-1/2}`.

use super::complex::s_coth_pi;
use super::fourier::Panels;
use super::{winding_number, FactorizationTable};
use crate::error::{domain, Error, Result};
use crate::integrate::{adaptive, adaptive_to_infinity, CompositeRule};
use crate::material::CreepLaw;
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const SIGMA_MAX: f64 = 1e6;

/// Case B parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseBConfig {
    /// Stiffness slope: the patch stiffness is `h x`.
    pub h: f64,
    /// Glue compliance slope: the glue compliance is `k0 x`.
    pub k0: f64,
    /// Plate compliance constant.
    pub lambda: f64,
    /// Point force at `x = 1`.
    pub load: f64,
    /// Patch, plate and glue laws; all three intensities must coincide.
    pub laws: [CreepLaw; 3],
}

impl CaseBConfig {
    pub fn new(h: f64, k0: f64, lambda: f64, load: f64, laws: [CreepLaw; 3]) -> Result<Self> {
        if !(h > 0.0) || !(k0 > 0.0) {
            return domain(format!("need h > 0 and k0 > 0, got h = {h}, k0 = {k0}"));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return domain(format!("lambda must be finite and non-negative, got {lambda}"));
        }
        if !load.is_finite() {
            return domain("load must be finite");
        }
        Ok(Self { h, k0, lambda, load, laws })
    }

    /// Creep-free configuration with the load applied at `t = 0`.
    pub fn elastic(h: f64, k0: f64, lambda: f64, load: f64) -> Result<Self> {
        let law = CreepLaw::elastic(1.0, 1.0, 0.0)?;
        Self::new(h, k0, lambda, load, [law; 3])
    }

    pub fn k0h(&self) -> f64 {
        self.k0 * self.h
    }

    pub fn lambda_h(&self) -> f64 {
        self.lambda * self.h
    }

    pub fn load_instant(&self) -> f64 {
        self.laws[0].load_instant
    }

    fn symbol(&self) -> Symbol {
        Symbol { kh: self.k0h(), lh: self.lambda_h() }
    }

    /// Multiplier of the elastic solution at time `t`.
    ///
    /// With one common intensity the equation is `(I - L) A[ψ] = 0` and the
    /// boundary datum is a step, so the elastic field persists unchanged.
    pub fn time_factor(&self, t: f64) -> Result<f64> {
        let [a, b, c] = &self.laws;
        if !(a.same_intensity(b) && a.same_intensity(c)) {
            return Err(Error::Precondition("case B needs equal creep intensities in patch, plate and glue".into()));
        }
        if t < self.load_instant() {
            return domain(format!("time {t} precedes the load instant {}", self.load_instant()));
        }
        Ok(1.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct Symbol {
    kh: f64,
    lh: f64,
}

impl Symbol {
    fn g1(&self, s: Complex64) -> Complex64 {
        1.0 + self.lh * s_coth_pi(s) + self.kh * s * s
    }

    fn g01(&self, s: Complex64) -> Complex64 {
        self.g1(s) / (self.kh * (1.0 + s * s))
    }

    fn ln_g01(&self, y: f64) -> f64 {
        self.g01(Complex64::new(y, 0.0)).re.ln()
    }
}

/// `(1/2πi) ∫ L(y) dy / (y - z)` for a real `L` decaying like `1/|y|`.
///
/// `L(σ)` is subtracted against the Lorentzian `1/(1 + (y-σ)²)`, `σ = Re z`,
/// whose Cauchy integral is known; the remainder is regular up to the axis.
/// On the axis `upper` selects the boundary value.
pub(crate) fn cauchy_log<L: Fn(f64) -> f64>(l: &L, z: Complex64, upper: bool) -> Complex64 {
    let sigma = z.re;
    let ls = l(sigma);
    let f = |y: f64| (l(y) - ls / (1.0 + (y - sigma) * (y - sigma))) / (y - z);
    let mut breaks = vec![sigma - 5.0, sigma - 0.5, sigma, sigma + 0.5, sigma + 5.0, 0.0];
    let (lo, hi) = (sigma.min(0.0) - 50.0, sigma.max(0.0) + 50.0);
    breaks.extend([lo, hi]);
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let (abs_tol, rel_tol) = (1e-12, 1e-10);
    let mut r = Complex64::new(0.0, 0.0);
    for w in breaks.windows(2) {
        r += adaptive(f, w[0], w[1], abs_tol, rel_tol).value;
    }
    r += adaptive_to_infinity(f, hi, abs_tol, rel_tol).value;
    r += adaptive_to_infinity(|u: f64| f(-u), -lo, abs_tol, rel_tol).value;
    let above = z.im > 0.0 || (z.im == 0.0 && upper);
    let j = if above { PI / (sigma - I - z) } else { PI / (sigma + I - z) };
    (r + ls * j) / (2.0 * PI * I)
}

/// Factorization table for a symbol `g` with real logarithm `ln_g` on the axis.
fn factor_table<L: Fn(f64) -> f64, G: Fn(f64) -> Complex64>(
    ln_g: &L,
    g: &G,
    window: f64,
    samples: usize,
    delta: f64,
) -> Result<FactorizationTable> {
    let winding = winding_number(g, 2e3, 40_000);
    if winding != 0 {
        return Err(Error::Factorization(format!("symbol has winding number {winding}")));
    }
    let abscissae = crate::integrate::linspace(-window, window, samples);
    let mut table = FactorizationTable {
        abscissae: abscissae.clone(),
        upper: Vec::new(),
        lower: Vec::new(),
        target: Vec::new(),
        residual: Vec::new(),
        winding,
    };
    for &s in &abscissae {
        let up = cauchy_log(ln_g, Complex64::new(s, delta), true).exp();
        let lo = cauchy_log(ln_g, Complex64::new(s, -delta), false).exp();
        let target = g(s);
        table.residual.push((up / lo - target).norm() / target.norm());
        table.upper.push(up);
        table.lower.push(lo);
        table.target.push(target);
    }
    Ok(table)
}

pub(crate) fn riemann_factorization_with(config: &CaseBConfig, delta: f64) -> Result<FactorizationTable> {
    let sym = config.symbol();
    let min_g1 = (0..=2000).map(|i| sym.g1(Complex64::new(i as f64 * 0.01, 0.0)).norm()).fold(f64::INFINITY, f64::min);
    if min_g1 < 1e-12 {
        return Err(Error::SingularIntegrand("G1 vanishes on the real axis".into()));
    }
    factor_table(&|y| sym.ln_g01(y), &|s| sym.g01(Complex64::new(s, 0.0)), 20.0, 81, delta)
}

/// Samples `X(s ± iδ)` on `|s| <= 20` and checks `X⁺/X⁻ = G01`.
pub fn riemann_factorization(config: &CaseBConfig) -> Result<FactorizationTable> {
    riemann_factorization_with(config, 1e-8)
}

/// Smallest root of `G1(iy) = 1 + λh y cot(πy) - k0h y²` in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseBExponent {
    /// `None` when no root exists and the stress stays bounded at `x → 0`.
    pub root: Option<f64>,
    /// Stress exponent at `x → 0`: `y0 - 1`, or 0 when bounded.
    pub exponent: f64,
    pub warning: Option<String>,
}

impl CaseBExponent {
    pub fn is_bounded(&self) -> bool {
        self.root.is_none()
    }
}

pub fn case_b_exponent(k0h: f64, lambda_h: f64) -> Result<CaseBExponent> {
    if !(k0h > 0.0) || !(lambda_h >= 0.0) {
        return domain(format!("need k0h > 0 and lambda_h >= 0, got {k0h}, {lambda_h}"));
    }
    let f = |y: f64| 1.0 + lambda_h * y / (PI * y).tan() - k0h * y * y;
    // f(0+) = 1 + λh/π > 0; refine the scan geometrically towards y = 1
    let mut grid: Vec<f64> = (1..4000).map(|i| i as f64 / 4000.0).collect();
    grid.extend((4..=15).map(|k| 1.0 - 10f64.powi(-k)));
    let mut prev = (grid[0], f(grid[0]));
    let mut root = None;
    for &y in &grid[1..] {
        let v = f(y);
        if v == 0.0 {
            root = Some(y);
            break;
        }
        if v.signum() != prev.1.signum() {
            let (mut a, mut b) = (prev.0, y);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if f(m).signum() == f(a).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            root = Some(0.5 * (a + b));
            break;
        }
        prev = (y, v);
    }
    let warning = root
        .filter(|&y| y < 1e-9 || 1.0 - y < 1e-9)
        .map(|y| format!("root y0 = {y} lies at the interval endpoint within tolerance"));
    Ok(CaseBExponent { root, exponent: root.map_or(0.0, |y| y - 1.0), warning })
}

/// Evaluator of the Case B contact stress at one time.
#[derive(Debug, Clone)]
pub struct CaseBSolution {
    pub exponent: CaseBExponent,
    /// Height of the inversion contour `Im s = c`.
    pub contour: f64,
    load: f64,
    xm0: f64,
    remainder: Panels,
}

impl CaseBSolution {
    pub fn new(config: &CaseBConfig, t: f64) -> Result<Self> {
        let factor = config.time_factor(t)?;
        let sym = config.symbol();
        let winding = winding_number(|s| sym.g01(Complex64::new(s, 0.0)), 2e3, 40_000);
        if winding != 0 {
            return Err(Error::Factorization(format!("symbol has winding number {winding}")));
        }
        let exponent = case_b_exponent(sym.kh, sym.lh)?;
        let c = 0.5 * exponent.root.unwrap_or(1.0);
        let xm0 = ((1.0 + sym.lh / PI) / sym.kh).powf(-0.5);
        let ln_g = |y: f64| sym.ln_g01(y);
        // transform minus its 1/(s - i) asymptote
        let remainder = Panels::build(Panels::geometric(0.05 * c, 1.2, SIGMA_MAX), |sigma| {
            let z = Complex64::new(sigma, c);
            let xm = cauchy_log(&ln_g, z, true).exp() / sym.g01(z);
            -I * (xm - 1.0) / ((z - I) * xm0)
        });
        let tail = remainder.eval(SIGMA_MAX).norm() * SIGMA_MAX * xm0;
        if tail > 1e-4 {
            return Err(Error::Accuracy(format!("transform tail {tail:e} beyond the truncation")));
        }
        Ok(Self { exponent, contour: c, load: config.load * factor, xm0, remainder })
    }

    /// `v(ξ) = x τ(x)` at `ξ = ln x < 0`.
    pub fn moment_density(&self, xi: f64) -> f64 {
        let integral = self.remainder.fourier(-xi, 400.0, 50.0);
        self.load * (xi.exp() / self.xm0 + (self.contour * xi).exp() / PI * integral.re)
    }

    pub fn stress(&self, x: f64) -> f64 {
        self.moment_density(x.ln()) / x
    }

    /// `∫_0^1 τ dx`, which the boundary condition fixes to `P`.
    pub fn resultant(&self) -> f64 {
        let y = self.exponent.root.unwrap_or(1.0);
        let depth = 40.0 / y;
        let breaks = crate::integrate::linspace(-depth, 0.0, 161);
        let base = crate::quadrature::gauss_legendre::<f64>(12).expect("order >= 1");
        CompositeRule::from_breaks(&breaks, &base).integrate(|xi| self.moment_density(xi))
    }
}

/// Contact stress of case B on a grid in `(0, 1)`.
#[derive(Debug, Clone)]
pub struct CaseBStress {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub resultant: f64,
    pub exponent: CaseBExponent,
}

pub fn case_b_stress(config: &CaseBConfig, t: f64, xs: &[f64]) -> Result<CaseBStress> {
    if let Some(&x) = xs.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
        return domain(format!("case B grid points must lie in (0, 1), got {x}"));
    }
    let sol = CaseBSolution::new(config, t)?;
    Ok(CaseBStress {
        xs: xs.to_vec(),
        values: xs.iter().map(|&x| sol.stress(x)).collect(),
        resultant: sol.resultant(),
        exponent: sol.exponent.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_factor_matches_rigid_plate_closed_form() {
        // λh = 0: G01 = (s² + a²)/(1 + s²), X⁺(z) = (z + ia)/(z + i), a = 1/√(k0h)
        let sym = Symbol { kh: 4.0, lh: 0.0 };
        for &z in &[Complex64::new(0.5, 0.25), Complex64::new(0.0, 0.25), Complex64::new(100.0, 0.1)] {
            let v = cauchy_log(&|y| sym.ln_g01(y), z, true);
            let exact = ((z + 0.5 * I) / (z + I)).ln();
            assert!((v - exact).norm() < 1e-10, "z={z}");
        }
    }

    #[test]
    fn identity_symbol_gives_unit_factor() {
        let t = factor_table(&|_| 0.0, &|_| Complex64::new(1.0, 0.0), 20.0, 21, 1e-8).unwrap();
        assert!(t.upper.iter().chain(&t.lower).all(|x| (x - 1.0).norm() < 1e-15));
        assert_eq!(t.max_residual(), 0.0);
    }

    #[test]
    fn residual_shrinks_with_offset() {
        let cfg = CaseBConfig::elastic(1.0, 2.0, 1.0, 1.0).unwrap();
        let coarse = riemann_factorization_with(&cfg, 2e-6).unwrap().max_residual();
        let fine = riemann_factorization_with(&cfg, 1e-6).unwrap().max_residual();
        assert!(fine < coarse && fine < 1e-5, "{coarse:e} {fine:e}");
    }

    #[test]
    fn exponent_roots() {
        for &lh in &[0.0, 0.3, 1.0, 5.0] {
            let e = case_b_exponent(4.0, lh).unwrap();
            assert!((e.root.unwrap() - 0.5).abs() < 1e-12 && (e.exponent + 0.5).abs() < 1e-12);
        }
        let e = case_b_exponent(2.0, 1e-9).unwrap();
        assert!((e.root.unwrap() - 0.5f64.sqrt()).abs() < 1e-6);
        assert!(case_b_exponent(0.5, 0.0).unwrap().is_bounded());
        // any positive plate compliance pulls a root into (0, 1)
        let e = case_b_exponent(0.5, 1.0).unwrap();
        assert!((e.root.unwrap() - 0.745).abs() < 1e-3);
        assert!(case_b_exponent(0.5, 1e-12).unwrap().warning.is_some());
        assert!(case_b_exponent(0.0, 1.0).is_err());
    }

    #[test]
    fn unequal_laws_rejected() {
        let mut cfg = CaseBConfig::elastic(1.0, 2.0, 1.0, 1.0).unwrap();
        cfg.laws[1] = CreepLaw::new(2.0, crate::material::AgeingFunction::constant(0.1), 1.0, 0.0, 0.0).unwrap();
        assert!(matches!(cfg.time_factor(1.0), Err(Error::Precondition(_))));
        assert!(matches!(CaseBConfig::elastic(1.0, 2.0, 1.0, 1.0).unwrap().time_factor(-1.0), Err(Error::Domain(_))));
    }
}
