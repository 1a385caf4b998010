//! Semi-infinite patch with stiffness `h x²` under a self-balanced traction
//! `τ0` on its surface.
//!
//! With `x = e^ξ` and the transform `Φ(s)` of `η1(e^ξ)` the equation becomes
//! the strip relation
//! `(1 + k0h s(s+i)) (I-L1)Φ(s+i) + λh s coth(πs) (I-L2)Φ(s) = h F(t, s)`.
//! The factor `X1 = X0 λ0^{iz} Γ(2+iz) sinh(πz/2)` with `X0(s+i)/X0(s) = G0(s)`
//! reduces it to `(I-L1)Ψ(s+i) + (I-L2)Ψ(s) = F1(t, s)` for `Ψ = zΦ/X1`,
//! which a Fourier transform in `s` turns into one Volterra equation per `w`.

use super::complex::{coth_tanh_half, ln_gamma_complex, tanh};
use super::fourier::Panels;
use super::{winding_number, FactorizationTable};
use crate::error::{domain, Error, Result};
use crate::integrate::{adaptive, linspace, CompositeRule};
use crate::material::{step_response, strip_weight_b, CreepLaw};
use crate::quadrature::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::sync::Arc;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
/// Contour heights for `x <= SWITCH` and `x > SWITCH`.
const NEAR: f64 = 0.5;
const FAR: f64 = -0.25;
const SWITCH: f64 = 10.0;
const S_MAX: f64 = 400.0;
/// `w` range of the tabulated response remainder.
const W_RANGE: (f64, f64) = (-50.0, 75.0);

/// Surface traction applied to the patch, supported on `[0, L]`.
pub trait Traction: Debug + Send + Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Right end `L` of the support.
    fn support(&self) -> f64;
}

/// `τ0 = A sin(2πx/L) sin²(πx/L)` on `[0, L]`: zero resultant, `τ0(0) = 0`,
/// twice continuously differentiable across `x = L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineTraction {
    pub amplitude: f64,
    pub length: f64,
}

impl Traction for SineTraction {
    fn value(&self, x: f64) -> f64 {
        if !(0.0..=self.length).contains(&x) {
            return 0.0;
        }
        let u = PI * x / self.length;
        self.amplitude * (0.5 * (2.0 * u).sin() - 0.25 * (4.0 * u).sin())
    }

    fn derivative(&self, x: f64) -> f64 {
        if !(0.0..=self.length).contains(&x) {
            return 0.0;
        }
        let u = PI * x / self.length;
        self.amplitude * PI / self.length * ((2.0 * u).cos() - (4.0 * u).cos())
    }

    fn support(&self) -> f64 {
        self.length
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroTraction;

impl Traction for ZeroTraction {
    fn value(&self, _: f64) -> f64 {
        0.0
    }
    fn derivative(&self, _: f64) -> f64 {
        0.0
    }
    fn support(&self) -> f64 {
        1.0
    }
}

/// Case A parameters.
#[derive(Debug, Clone)]
pub struct CaseAConfig {
    /// Stiffness coefficient: the patch stiffness is `h x²`.
    pub h: f64,
    /// Glue compliance.
    pub k0: f64,
    /// Plate compliance constant.
    pub lambda: f64,
    pub traction: Arc<dyn Traction>,
    /// Patch, plate and glue laws; patch and glue intensities must coincide.
    pub laws: [CreepLaw; 3],
}

impl CaseAConfig {
    pub fn new(h: f64, k0: f64, lambda: f64, traction: Arc<dyn Traction>, laws: [CreepLaw; 3]) -> Result<Self> {
        if !(h > 0.0 && k0 > 0.0 && lambda > 0.0) {
            return domain(format!("need h, k0, lambda > 0, got {h}, {k0}, {lambda}"));
        }
        let [patch, plate, glue] = &laws;
        if !patch.same_intensity(glue) {
            return Err(Error::Precondition("case A needs equal creep intensities in patch and glue".into()));
        }
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs());
        if !close(patch.gamma, plate.gamma) || !close(patch.load_instant, plate.load_instant) {
            return Err(Error::Precondition("patch and plate need one relaxation rate and load instant".into()));
        }
        let config = Self { h, k0, lambda, traction, laws };
        config.check_traction()?;
        Ok(config)
    }

    pub fn elastic(h: f64, k0: f64, lambda: f64, traction: Arc<dyn Traction>) -> Result<Self> {
        let law = CreepLaw::elastic(1.0, 1.0, 0.0)?;
        Self::new(h, k0, lambda, traction, [law; 3])
    }

    pub fn load_instant(&self) -> f64 {
        self.laws[0].load_instant
    }

    fn check_traction(&self) -> Result<()> {
        let l = self.traction.support();
        if !(l > 0.0) {
            return Err(Error::Config(format!("traction support must be positive, got {l}")));
        }
        let rule = CompositeRule::new(0.0, l, 8, 16);
        let m0 = rule.integrate(|y| self.traction.value(y));
        let size = rule.integrate(|y| self.traction.value(y).abs());
        if m0.abs() > 1e-10 * size.max(f64::MIN_POSITIVE) {
            return Err(Error::Config(format!("traction resultant {m0:e} is not zero")));
        }
        let t0 = self.traction.value(0.0);
        if t0.abs() > 1e-12 * size.max(f64::MIN_POSITIVE) / l {
            return Err(Error::Config(format!("traction must vanish at x = 0, got {t0}")));
        }
        Ok(())
    }

    /// `∫_0^L τ0(y) dy / (y - x)`, principal value inside the support.
    fn traction_hilbert(&self, x: f64) -> f64 {
        self.traction_hilbert_with(&CompositeRule::new(0.0, self.traction.support(), 4, 32), x)
    }

    fn traction_hilbert_with(&self, rule: &CompositeRule, x: f64) -> f64 {
        let l = self.traction.support();
        let tau = self.traction.as_ref();
        let tx = tau.value(x);
        let regular = rule.integrate(|y| {
            let d = y - x;
            if d.abs() < 1e-12 * l {
                tau.derivative(x)
            } else {
                (tau.value(y) - tx) / d
            }
        });
        if tx == 0.0 {
            regular
        } else {
            regular + tx * ((l - x) / x).abs().ln()
        }
    }

    fn traction_moment(&self, n: i32) -> f64 {
        CompositeRule::new(0.0, self.traction.support(), 8, 16).integrate(|y| y.powi(n) * self.traction.value(y))
    }

    fn step_responses(&self, t: f64) -> Result<(f64, f64)> {
        Ok((step_response(&self.laws[2], t)?, step_response(&self.laws[1], t)?))
    }
}

/// `g1(t, x) = k0 f3(t) τ0'(x) + (λ/π) f2(t) ∫ τ0(y) dy / (y - x)` with
/// `f3`, `f2` the glue and plate operators applied to the load step.
pub fn case_a_forcing(config: &CaseAConfig, t: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("x must be positive, got {x}"));
    }
    config.check_traction()?;
    let (f3, f2) = config.step_responses(t)?;
    Ok(config.k0 * f3 * config.traction.derivative(x) + config.lambda / PI * f2 * config.traction_hilbert(x))
}

#[derive(Debug, Clone, Copy)]
struct StripSymbol {
    kh: f64,
}

impl StripSymbol {
    fn g0(&self, s: Complex64) -> Complex64 {
        self.kh * (s * s + 1.0) * coth_tanh_half(s) / (1.0 + self.kh * s * (s + I))
    }

    fn l0(&self, s: f64) -> Complex64 {
        self.g0(Complex64::new(s, 0.0)).ln()
    }
}

fn coth(z: Complex64) -> Complex64 {
    1.0 / tanh(z)
}

/// `ln X0(z)` on the closed strip `0 <= Im z <= 1` from
/// `X0(z) = exp{-(1/2i) ∫ L0(s) [coth π(s-z) - tanh πs] ds}`, `L0 = ln G0`.
///
/// `L0(σ)` is subtracted at `σ = Re z`; the subtracted kernel integrates to
/// `i - 2z` in the open strip and to its boundary values on the edges.
fn ln_x0_with<L: Fn(f64) -> Complex64>(l0: &L, z: Complex64) -> Complex64 {
    let sigma = z.re;
    let ls = l0(sigma);
    let f = |s: f64| (l0(s) - ls) * (coth((s - z) * PI) - tanh(Complex64::new(PI * s, 0.0)));
    let (lo, hi) = (sigma.min(0.0) - 15.0, sigma.max(0.0) + 15.0);
    let mut breaks = vec![lo, sigma - 0.5, sigma, sigma + 0.5, 0.0, hi];
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let r: Complex64 = breaks.windows(2).map(|w| adaptive(f, w[0], w[1], 1e-13, 1e-11).value).sum();
    0.5 * I * (r + ls * (I - 2.0 * z))
}

/// Shared factor machinery for one configuration.
#[derive(Debug, Clone, Copy)]
struct Factor {
    symbol: StripSymbol,
    ln_lambda0: f64,
}

impl Factor {
    fn new(config: &CaseAConfig) -> Self {
        Self { symbol: StripSymbol { kh: config.k0 * config.h }, ln_lambda0: (config.k0 / config.lambda).ln() }
    }

    fn ln_x0(&self, z: Complex64) -> Complex64 {
        let sym = self.symbol;
        if z.im >= 0.0 {
            ln_x0_with(&|s| sym.l0(s), z)
        } else {
            ln_x0_with(&|s| sym.l0(s), z + I) - sym.g0(z).ln()
        }
    }

    /// `X1(z)` for `-1 < Im z <= 1`.
    fn x1(&self, z: Complex64) -> Complex64 {
        let ln_x = I * z * self.ln_lambda0 + ln_gamma_complex(2.0 + I * z);
        (self.ln_x0(z) + ln_x).exp() * (z * (PI / 2.0)).sinh()
    }
}

/// Samples `X0` just inside both edges of the strip and checks
/// `X0(s + i)/X0(s) = G0(s)`.
pub fn strip_factorization(config: &CaseAConfig) -> Result<FactorizationTable> {
    strip_factorization_with(config, 1e-8)
}

pub(crate) fn strip_factorization_with(config: &CaseAConfig, delta: f64) -> Result<FactorizationTable> {
    let sym = Factor::new(config).symbol;
    strip_table(&|s| sym.l0(s), &|s| sym.g0(Complex64::new(s, 0.0)), delta)
}

fn strip_table<L: Fn(f64) -> Complex64, G: Fn(f64) -> Complex64>(
    l0: &L,
    g0: &G,
    delta: f64,
) -> Result<FactorizationTable> {
    let winding = winding_number(g0, 2e3, 40_000);
    if winding != 0 {
        return Err(Error::Factorization(format!("strip symbol has index {winding}")));
    }
    let abscissae = linspace(-20.0, 20.0, 81);
    let mut table = FactorizationTable {
        abscissae: abscissae.clone(),
        upper: Vec::new(),
        lower: Vec::new(),
        target: Vec::new(),
        residual: Vec::new(),
        winding,
    };
    for &s in &abscissae {
        let up = ln_x0_with(l0, Complex64::new(s, 1.0 - delta)).exp();
        let lo = ln_x0_with(l0, Complex64::new(s, delta)).exp();
        let target = g0(s);
        table.residual.push((up / lo - target).norm() / target.norm());
        table.upper.push(up);
        table.lower.push(lo);
        table.target.push(target);
    }
    Ok(table)
}

/// Time-independent part of the Case A pipeline.
///
/// The Volterra response `U_j(t, w)` depends on `w` only through
/// `p = 1/(1 + e^w)`. Writing `U = U(1) p + r` splits
/// `Ψ(z) = ∫ F1(s) K(s - z) ds` into a closed-form kernel
/// `1/(2 sin π(c + iv))`, kept here per contour, and a quickly decaying
/// remainder tabulated per time. Below the real axis the pole of the kernel
/// has crossed the path and contributes `U(1) F1(z)`.
#[derive(Debug, Clone)]
pub struct CaseASolution {
    config: CaseAConfig,
    /// `F1` on a fixed quadrature grid for the `s` convolutions.
    grid: ConvolutionGrid,
    /// `X1` at the nodes of `Im z = NEAR` and `Im z = FAR`.
    x1: [Panels; 2],
    /// Unit-response `Ψ` per contour and forcing part, at the same nodes.
    psi_unit: [[Panels; 2]; 2],
}

impl CaseASolution {
    pub fn new(config: &CaseAConfig) -> Result<Self> {
        config.check_traction()?;
        let factor = Factor::new(config);
        let sym = factor.symbol;
        let winding = winding_number(|s| sym.g0(Complex64::new(s, 0.0)), 2e3, 40_000);
        if winding != 0 {
            return Err(Error::Factorization(format!("strip symbol has index {winding}")));
        }
        let mellin = MellinForcing::new(config);
        let f1_at = |z: Complex64| {
            let up = z + I;
            let f = mellin.transform(z);
            let scale = up * config.h / ((1.0 + sym.kh * z * up) * factor.x1(up));
            [f[0] * scale, f[1] * scale]
        };
        // F1 carries the phase of 1/Γ(1+is) and of (L/λ0)^{is}; the panels
        // hold it with that phase removed
        let ln_ratio = config.traction.support().ln() - factor.ln_lambda0;
        let chirp = |s: f64| Complex64::from_polar(1.0, s * ln_ratio - ln_gamma_complex(Complex64::new(1.0, s)).im);
        let s_breaks = Panels::symmetric(0.05, 1.2, S_MAX);
        let real: Vec<[Complex64; 2]> = Panels::nodes_of(&s_breaks)
            .map(|s| {
                let f = f1_at(Complex64::new(s, 0.0));
                let c = chirp(s).conj();
                [f[0] * c, f[1] * c]
            })
            .collect();
        let smooth = [0, 1].map(|j| Panels::from_values(s_breaks.clone(), real.iter().map(|v| v[j])));
        let edge = smooth[0].edge_ratio().max(smooth[1].edge_ratio());
        if edge > 1e-5 {
            return Err(Error::Accuracy(format!("forcing transform does not decay (edge ratio {edge:e})")));
        }
        let grid = ConvolutionGrid::new(|s| {
            let c = chirp(s);
            [smooth[0].eval(s) * c, smooth[1].eval(s) * c]
        });
        let x1 = [NEAR, FAR].map(|c| Panels::build(s_breaks.clone(), |s| factor.x1(Complex64::new(s, c))));
        let below: Vec<[Complex64; 2]> = Panels::nodes_of(&s_breaks).map(|s| f1_at(Complex64::new(s, FAR))).collect();
        let psi_unit = [NEAR, FAR].map(|c| {
            [0, 1].map(|j| {
                let mut residues = below.iter();
                Panels::build(s_breaks.clone(), |sigma| {
                    let v = grid.convolve(j, sigma, |v| 0.5 / (PI * Complex64::new(c, v)).sin());
                    let r = residues.next().expect("one value per node")[j];
                    if c < 0.0 {
                        v + r
                    } else {
                        v
                    }
                })
            })
        });
        Ok(Self { config: config.clone(), grid, x1, psi_unit })
    }

    /// `U_j(t, 1)` and the remainder `r_j(t, w)` for the glue and plate parts;
    /// `None` when the remainder vanishes identically.
    fn responses(&self, t: f64) -> Result<([f64; 2], Option<[Panels; 2]>)> {
        let [patch, plate, glue] = &self.config.laws;
        let t0 = self.config.load_instant();
        if t < t0 {
            return domain(format!("time {t} precedes the load instant {t0}"));
        }
        let forcing = [glue, plate];
        let mut unit = [0.0; 2];
        for j in 0..2 {
            unit[j] = strip_response(patch, plate, forcing[j], f64::NEG_INFINITY, t)?;
        }
        if t == t0 || (patch.aging.is_zero() && plate.aging.is_zero()) {
            return Ok((unit, None));
        }
        let breaks = linspace(W_RANGE.0, W_RANGE.1, (W_RANGE.1 - W_RANGE.0) as usize + 1);
        let mut rem = Vec::with_capacity(2);
        for j in 0..2 {
            let mut err = None;
            let panels = Panels::build(breaks.clone(), |w| {
                let p = 1.0 / (1.0 + w.exp());
                match strip_response(patch, plate, forcing[j], w, t) {
                    Ok(u) => Complex64::new(u - unit[j] * p, 0.0),
                    Err(e) => {
                        err = Some(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            rem.push(panels);
        }
        let rem: [Panels; 2] = rem.try_into().expect("two parts");
        Ok((unit, Some(rem)))
    }

    /// `(1/2π) ∫ r(w) e^{wc} e^{iwv} dw` tabulated on `|v| <= KERNEL_SPAN`.
    fn remainder_kernel(rem: &Panels, c: f64) -> Panels {
        let weighted = rem.map(|w, v| v * (w * c).exp());
        let breaks = linspace(-KERNEL_SPAN, KERNEL_SPAN, 4 * KERNEL_SPAN as usize + 1);
        Panels::build(breaks, |v| weighted.oscillatory(v, weighted.lower(), weighted.upper()) / (2.0 * PI))
    }

    /// `-i X1(z) Ψ(t, z) e^{-iσ ln L} / √(2π)` along contour `index`; the
    /// last factor takes out the oscillation set by the traction support.
    fn contour_integrand(&self, t: f64, index: usize) -> Result<Panels> {
        let c = [NEAR, FAR][index];
        let (unit, rem) = self.responses(t)?;
        let kernels = rem.map(|r| [Self::remainder_kernel(&r[0], c), Self::remainder_kernel(&r[1], c)]);
        let norm = 1.0 / (2.0 * PI).sqrt();
        let units = &self.psi_unit[index];
        let ln_l = self.config.traction.support().ln();
        Ok(self.x1[index].map(|sigma, x1| {
            let mut psi = units[0].eval(sigma) * unit[0] + units[1].eval(sigma) * unit[1];
            if let Some(k) = &kernels {
                for (j, kj) in k.iter().enumerate() {
                    psi += self.grid.convolve(j, sigma, |v| kj.eval(v));
                }
            }
            -I * x1 * psi * Complex64::from_polar(norm, -sigma * ln_l)
        }))
    }

    /// Contact stress at time `t` on a grid of positive abscissae.
    pub fn stress(&self, t: f64, xs: &[f64]) -> Result<CaseAStress> {
        if let Some(&x) = xs.iter().find(|&&x| !(x > 0.0)) {
            return domain(format!("grid points must be positive, got {x}"));
        }
        let contours = [self.contour_integrand(t, 0)?, self.contour_integrand(t, 1)?];
        // the near integrand is cut hard; the far one is only used past
        // SWITCH, where its end gets the asymptotic tail
        for (contour, tol) in contours.iter().zip([1e-5, 1e-3]) {
            let edge = contour.edge_ratio();
            if edge > tol {
                return Err(Error::Accuracy(format!("stress transform does not decay (edge ratio {edge:e})")));
            }
        }
        let mut values = Vec::with_capacity(xs.len());
        let mut imaginary = 0.0f64;
        for &x in xs {
            let index = usize::from(x > SWITCH);
            let v = invert(&contours[index], [NEAR, FAR][index], x, self.config.traction.support());
            imaginary = imaginary.max(v.im.abs());
            values.push(self.config.traction.value(x) + v.re);
        }
        Ok(CaseAStress { xs: xs.to_vec(), values, imaginary })
    }
}

/// Half-width of the kernel tables; both kernels decay like `e^{-π|v|}`.
const KERNEL_SPAN: f64 = 12.0;

/// Fixed GL10 grid on `|s| <= S_MAX` carrying `F1`, so that convolutions
/// never interpolate its oscillating phase.
#[derive(Debug, Clone)]
struct ConvolutionGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<[Complex64; 2]>,
}

impl ConvolutionGrid {
    fn new<F: FnMut(f64) -> [Complex64; 2]>(f: F) -> Self {
        let n = (2.0 * S_MAX / 0.25).round() as usize;
        let base = gauss_legendre::<f64>(10).expect("order >= 1");
        let rule = CompositeRule::from_breaks(&linspace(-S_MAX, S_MAX, n + 1), &base);
        let values = rule.nodes.iter().copied().map(f).collect();
        Self { nodes: rule.nodes, weights: rule.weights, values }
    }

    /// `∫ F1_j(s) k(s - σ) ds` over `|s - σ| <= KERNEL_SPAN`.
    fn convolve<K: Fn(f64) -> Complex64>(&self, j: usize, sigma: f64, k: K) -> Complex64 {
        let lo = self.nodes.partition_point(|&s| s < sigma - KERNEL_SPAN);
        let hi = self.nodes.partition_point(|&s| s <= sigma + KERNEL_SPAN);
        (lo..hi).map(|p| self.values[p][j] * k(self.nodes[p] - sigma) * self.weights[p]).sum()
    }
}

/// `x^{-1} e^{cξ} ∫ g(σ) e^{-iσ(ξ - ln L)} dσ` at `ξ = ln x`.
fn invert(contour: &Panels, c: f64, x: f64, support: f64) -> Complex64 {
    let xi = x.ln();
    contour.fourier(-(xi - support.ln()), 400.0, 50.0) * ((c * xi).exp() / x)
}

/// Solution `u` of `[e^w (I - L1) + (I - L2)] u = f` with `f = (I - L_f)H`.
///
/// With the common memory `z = γ ∫ e^{-γ(t-τ)} u dτ` the equation reads
/// `(1 + e^w) u - (e^w c1 + c2) z = f`, and `z` follows from the integrating
/// factor `exp γ(2(t - t0) - b(w, t))`.
fn strip_response(l1: &CreepLaw, l2: &CreepLaw, forcing: &CreepLaw, w: f64, t: f64) -> Result<f64> {
    let t0 = l1.load_instant;
    let p = 1.0 / (1.0 + w.exp());
    let f_t = step_response(forcing, t)?;
    if t == t0 || (l1.aging.is_zero() && l2.aging.is_zero()) {
        return Ok(p * f_t);
    }
    let g = l1.gamma;
    let b_t = strip_weight_b(t0, t, w, (l1, l2))?;
    let mut failure = None;
    let z = adaptive(
        |s| {
            match (step_response(forcing, s), strip_weight_b(t0, s, w, (l1, l2))) {
                (Ok(f), Ok(b)) => g * p * f * (g * (2.0 * (s - t) - b + b_t)).exp(),
                (Err(e), _) | (_, Err(e)) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        t0,
        t,
        1e-15,
        1e-11,
    )
    .value;
    if let Some(e) = failure {
        return Err(e);
    }
    let lw = 1.0 - p;
    Ok(p * f_t + (lw * l1.intensity(t) + p * l2.intensity(t)) * z)
}

/// `F_j(s) = (1/√2π) ∫_0^∞ g1_j(x) x^{is} dx` for the glue (`j = 0`) and plate
/// (`j = 1`) parts of the elastic forcing.
///
/// The `ξ = ln x` range is covered by two runs of equal GL8 intervals so that
/// `e^{isξ}` advances by a fixed factor from one interval to the next.
struct MellinForcing {
    /// `(first break, interval width, interval count)` per run.
    runs: Vec<(f64, f64, usize)>,
    offsets: Vec<f64>,
    weights: Vec<[f64; 2]>,
    /// Right end `R` of the sampled range and the traction moments `M_n`, `n >= 1`.
    outer: f64,
    moments: Vec<f64>,
    plate_scale: f64,
}

impl MellinForcing {
    fn new(config: &CaseAConfig) -> Self {
        let l = config.traction.support();
        let outer = 2.0 * l;
        // keep the phase step s·Δξ of one GL8 interval below 2.5 up to S_MAX
        let step = 2.5 / S_MAX;
        let (lo, mid, hi) = (l.ln() - 30.0, l.ln(), outer.ln());
        let runs: Vec<(f64, f64, usize)> = [(lo, mid), (mid, hi)]
            .iter()
            .map(|&(a, b)| {
                let n = ((b - a) / step).ceil() as usize;
                (a, (b - a) / n as f64, n)
            })
            .collect();
        let base = gauss_legendre::<f64>(8).expect("order >= 1");
        let offsets: Vec<f64> = base.nodes.iter().map(|&x| 0.5 * (x + 1.0)).collect();
        let plate_scale = config.lambda / PI;
        let support_rule = CompositeRule::new(0.0, l, 4, 32);
        let mut weights = Vec::new();
        for &(a, h, n) in &runs {
            for k in 0..n {
                for (&u, &wt) in offsets.iter().zip(&base.weights) {
                    let x = (a + (k as f64 + u) * h).exp();
                    let wt = 0.5 * wt * h * x;
                    weights.push([
                        wt * config.k0 * config.traction.derivative(x),
                        wt * plate_scale * config.traction_hilbert_with(&support_rule, x),
                    ]);
                }
            }
        }
        let moments = (1..=60).map(|n| config.traction_moment(n)).collect();
        Self { runs, offsets, weights, outer, moments, plate_scale }
    }

    fn transform(&self, s: Complex64) -> [Complex64; 2] {
        let mut acc = [Complex64::new(0.0, 0.0); 2];
        let mut weights = self.weights.iter();
        for &(a, h, n) in &self.runs {
            let local: Vec<Complex64> = self.offsets.iter().map(|&u| (I * s * (u * h)).exp()).collect();
            let advance = (I * s * h).exp();
            let mut phase = (I * s * a).exp();
            for k in 0..n {
                // refresh to bound the drift of the running product
                if k % 256 == 0 {
                    phase = (I * s * (a + k as f64 * h)).exp();
                }
                for e in &local {
                    let w = weights.next().expect("one weight per node");
                    let v = phase * e;
                    acc[0] += v * w[0];
                    acc[1] += v * w[1];
                }
                phase *= advance;
            }
        }
        // beyond R the Hilbert transform is -Σ M_n / x^{n+1}
        let ln_r = self.outer.ln();
        for (k, &m) in self.moments.iter().enumerate() {
            let n = (k + 1) as f64;
            let rn = ((I * s - n) * ln_r).exp();
            acc[1] -= self.plate_scale * m * rn / (n - I * s);
        }
        let norm = 1.0 / (2.0 * PI).sqrt();
        [acc[0] * norm, acc[1] * norm]
    }
}

/// Contact stress of case A on a grid.
#[derive(Debug, Clone)]
pub struct CaseAStress {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest imaginary part left by the inverse transform.
    pub imaginary: f64,
}

pub fn case_a_stress(config: &CaseAConfig, t: f64, xs: &[f64]) -> Result<CaseAStress> {
    CaseASolution::new(config)?.stress(t, xs)
}
