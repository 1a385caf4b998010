//! Creep laws, hereditary kernels and the time operators `(I - L_i)`.
//!
//! Every material follows the exponential creep measure
//! `C(t, τ) = φ(τ)(1 - e^{-γ(t-τ)})`. The kernel of the time operator is taken
//! with the ageing function evaluated at the observation time,
//! `K(t, τ) = M φ(t) γ e^{-γ(t-τ)}`, so that the operator applied to a step
//! load gives `1 - M φ(t)(1 - e^{-γ(t-t0)})` exactly.

use crate::error::{domain, Error, Result};
use crate::integrate::adaptive;

/// Ageing function `φ(t) = asymptote + hyperbolic / t`.
///
/// Covers the constant law (`hyperbolic = 0`) and the classic
/// Arutyunyan-type law used for concrete and polymer glues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgeingFunction {
    pub asymptote: f64,
    pub hyperbolic: f64,
}

impl AgeingFunction {
    pub const ZERO: Self = Self { asymptote: 0.0, hyperbolic: 0.0 };

    pub fn constant(value: f64) -> Self {
        Self { asymptote: value, hyperbolic: 0.0 }
    }

    pub fn hyperbolic(asymptote: f64, hyperbolic: f64) -> Self {
        Self { asymptote, hyperbolic }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self { asymptote: self.asymptote * factor, hyperbolic: self.hyperbolic * factor }
    }

    pub fn is_zero(&self) -> bool {
        self.asymptote == 0.0 && self.hyperbolic == 0.0
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.hyperbolic == 0.0 {
            self.asymptote
        } else {
            self.asymptote + self.hyperbolic / t
        }
    }

    /// `∫_lo^hi φ(s) ds`.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let mut v = self.asymptote * (hi - lo);
        if self.hyperbolic != 0.0 {
            v += self.hyperbolic * (hi / lo).ln();
        }
        v
    }
}

/// One material's creep description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreepLaw {
    /// Instantaneous modulus `M` (Young's modulus of a solid, shear modulus of the glue).
    pub modulus: f64,
    pub aging: AgeingFunction,
    /// Relaxation rate `γ`.
    pub gamma: f64,
    /// Age of the material at the load instant minus the load instant, `ρ`.
    pub age_shift: f64,
    /// Load instant `t0`.
    pub load_instant: f64,
}

impl CreepLaw {
    pub fn new(modulus: f64, aging: AgeingFunction, gamma: f64, age_shift: f64, load_instant: f64) -> Result<Self> {
        if !(modulus > 0.0) {
            return domain(format!("modulus must be positive, got {modulus}"));
        }
        if !(gamma > 0.0) {
            return domain(format!("gamma must be positive, got {gamma}"));
        }
        if !(age_shift >= 0.0) {
            return domain(format!("age shift must be non-negative, got {age_shift}"));
        }
        if !load_instant.is_finite() {
            return domain("load instant must be finite");
        }
        let start = load_instant + age_shift;
        if aging.hyperbolic != 0.0 && !(start > 0.0) {
            return domain(format!("hyperbolic ageing needs a positive material age at loading, got {start}"));
        }
        if aging.asymptote < 0.0 || aging.eval(start) < 0.0 {
            return domain("ageing function must be non-negative after the load instant");
        }
        Ok(Self { modulus, aging, gamma, age_shift, load_instant })
    }

    /// Same material without creep.
    pub fn elastic(modulus: f64, gamma: f64, load_instant: f64) -> Result<Self> {
        Self::new(modulus, AgeingFunction::ZERO, gamma, 0.0, load_instant)
    }

    /// `φ` at material age `t + ρ`.
    pub fn phi(&self, t: f64) -> f64 {
        self.aging.eval(t + self.age_shift)
    }

    /// `M φ(t + ρ)`, the dimensionless creep intensity.
    pub fn intensity(&self, t: f64) -> f64 {
        self.modulus * self.phi(t)
    }

    /// `∫_{t0}^{t} φ(s + ρ) ds`.
    pub fn running_integral(&self, t: f64) -> f64 {
        self.aging.integral(self.load_instant + self.age_shift, t + self.age_shift)
    }

    /// Whether `M φ(t+ρ)` and the relaxation rate coincide with `other`'s for all `t`.
    pub fn same_intensity(&self, other: &CreepLaw) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs());
        let shift_ok = self.aging.hyperbolic == 0.0 && other.aging.hyperbolic == 0.0
            || close(self.age_shift, other.age_shift);
        close(self.gamma, other.gamma)
            && close(self.load_instant, other.load_instant)
            && close(self.modulus * self.aging.asymptote, other.modulus * other.aging.asymptote)
            && close(self.modulus * self.aging.hyperbolic, other.modulus * other.aging.hyperbolic)
            && shift_ok
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if t < self.load_instant {
            return domain(format!("time {t} precedes the load instant {}", self.load_instant));
        }
        Ok(())
    }

    /// Hereditary kernel `K(t, τ) = M φ(t+ρ) γ e^{-γ(t-τ)}`.
    pub fn kernel(&self, t: f64, tau: f64) -> Result<f64> {
        if t < tau {
            return Err(Error::Causality { t, tau });
        }
        Ok(self.intensity(t) * self.gamma * (-self.gamma * (t - tau)).exp())
    }

    /// Raw `M ∂C/∂τ (t+ρ, τ+ρ)`, kept for comparison with [`CreepLaw::kernel`].
    pub fn creep_derivative_kernel(&self, t: f64, tau: f64) -> Result<f64> {
        if t < tau {
            return Err(Error::Causality { t, tau });
        }
        let age = tau + self.age_shift;
        let e = (-self.gamma * (t - tau)).exp();
        let dphi = -self.aging.hyperbolic / (age * age);
        Ok(self.modulus * (dphi * (1.0 - e) - self.aging.eval(age) * self.gamma * e))
    }
}

/// `C(t, τ) = φ(τ+ρ)(1 - e^{-γ(t-τ)})`.
pub fn creep_measure(law: &CreepLaw, t: f64, tau: f64) -> Result<f64> {
    if t < tau {
        return Err(Error::Causality { t, tau });
    }
    law.check_time(tau)?;
    Ok(law.phi(tau) * -(-law.gamma * (t - tau)).exp_m1())
}

/// `(I - L)ψ(t)` for a pointwise-evaluable history `ψ` on `[t0, t]`.
pub fn apply_time_operator<F: Fn(f64) -> f64>(law: &CreepLaw, psi: F, t: f64) -> Result<f64> {
    law.check_time(t)?;
    let t0 = law.load_instant;
    let c = law.intensity(t);
    if t == t0 || c == 0.0 {
        return Ok(psi(t));
    }
    let g = law.gamma;
    let q = adaptive(|tau| (-g * (t - tau)).exp() * psi(tau), t0, t, 1e-15, 1e-13);
    Ok(psi(t) - c * g * q.value)
}

/// `(I - L)H(t)`, the operator applied to a unit step at `t0`.
pub fn step_response(law: &CreepLaw, t: f64) -> Result<f64> {
    law.check_time(t)?;
    Ok(1.0 + law.intensity(t) * (-law.gamma * (t - law.load_instant)).exp_m1())
}

/// Exact weights of the exponential trapezoid step on `[0, h]`:
/// `a = ∫ e^{-γ(h-s)}(1 - s/h) ds`, `b = ∫ e^{-γ(h-s)} s/h ds`.
pub fn exponential_step_weights(gamma: f64, h: f64) -> (f64, f64) {
    let x = gamma * h;
    if x < 1e-4 {
        // series in x avoids cancellation
        let a = h * (0.5 - x / 3.0 + x * x / 8.0);
        let b = h * (0.5 - x / 6.0 + x * x / 24.0);
        return (a, b);
    }
    let e = (-x).exp();
    let em1 = -(-x).exp_m1();
    let a = (em1 / x - e) / gamma;
    let b = (1.0 - em1 / x) / gamma;
    (a, b)
}

/// Memory state `z(t) = γ ∫_{t0}^t e^{-γ(t-τ)} ψ(τ) dτ` sampled on `times`,
/// with `ψ` piecewise linear between the samples.
pub fn memory_on_grid(gamma: f64, times: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    if times.len() != values.len() {
        return domain("time grid and history lengths differ");
    }
    let mut z = Vec::with_capacity(times.len());
    if times.is_empty() {
        return Ok(z);
    }
    z.push(0.0);
    for n in 1..times.len() {
        let h = times[n] - times[n - 1];
        if !(h > 0.0) {
            return domain("time grid must be strictly increasing");
        }
        let (a, b) = exponential_step_weights(gamma, h);
        let next = (-gamma * h).exp() * z[n - 1] + gamma * (a * values[n - 1] + b * values[n]);
        z.push(next);
    }
    Ok(z)
}

/// `(I - L)ψ` on a grid starting at the load instant.
pub fn apply_time_operator_grid(law: &CreepLaw, times: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    match times.first() {
        Some(&t) if (t - law.load_instant).abs() <= 1e-12 * t.abs().max(1.0) => {}
        Some(_) => return domain("time grid must start at the load instant"),
        None => return Ok(Vec::new()),
    }
    let z = memory_on_grid(law.gamma, times, values)?;
    Ok(times
        .iter()
        .zip(values)
        .zip(&z)
        .map(|((&t, &v), &zz)| v - law.intensity(t) * zz)
        .collect())
}

/// `α(t) = exp ∫_{t0}^t γ(1 + M φ(s+ρ)) ds`.
pub fn aging_weight(law: &CreepLaw, t: f64) -> Result<f64> {
    law.check_time(t)?;
    Ok((law.gamma * ((t - law.load_instant) + law.modulus * law.running_integral(t))).exp())
}

/// `w(t) = exp ∫_{t0}^t γ(1 - M φ(s+ρ)) ds`, the integrating factor that
/// turns `Z = g + Mφ z`, `z' = γ(Z - z)` into a quadrature.
pub fn integrating_factor(law: &CreepLaw, t: f64) -> Result<f64> {
    law.check_time(t)?;
    Ok((law.gamma * ((t - law.load_instant) - law.modulus * law.running_integral(t))).exp())
}

/// `b(w, τ) = (τ - t0) + (E1 e^w ψ1(τ) + E2 ψ2(τ)) / (1 + e^w)` with `ψ_j` the
/// running integrals of the ageing functions.
pub fn strip_weight_b(t0: f64, tau: f64, w: f64, laws: (&CreepLaw, &CreepLaw)) -> Result<f64> {
    if tau < t0 {
        return domain(format!("tau = {tau} precedes t0 = {t0}"));
    }
    let (l1, l2) = laws;
    let psi = |l: &CreepLaw| l.aging.integral(t0 + l.age_shift, tau + l.age_shift);
    // logistic weight written to stay finite for large |w|
    let s = 1.0 / (1.0 + (-w).exp());
    Ok((tau - t0) + s * l1.modulus * psi(l1) + (1.0 - s) * l2.modulus * psi(l2))
}

/// Glue layer between patch and plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlueLayer {
    pub thickness: f64,
    pub shear_modulus: f64,
}

impl GlueLayer {
    pub fn new(thickness: f64, shear_modulus: f64) -> Result<Self> {
        if !(thickness > 0.0 && shear_modulus > 0.0) {
            return domain("glue thickness and shear modulus must be positive");
        }
        Ok(Self { thickness, shear_modulus })
    }

    /// `k0 = h0 / G0`.
    pub fn compliance(&self) -> f64 {
        self.thickness / self.shear_modulus
    }
}

/// Elastic constants of the plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateConstants {
    pub young: f64,
    pub poisson: f64,
}

impl PlateConstants {
    pub fn new(young: f64, poisson: f64) -> Result<Self> {
        if !(young > 0.0) {
            return domain("plate modulus must be positive");
        }
        if !(poisson > 0.0 && poisson < 0.5) {
            return domain(format!("plate Poisson ratio must lie in (0, 0.5), got {poisson}"));
        }
        Ok(Self { young, poisson })
    }

    /// `λ = 2(1 - ν²)/E`.
    pub fn lambda(&self) -> f64 {
        2.0 * (1.0 - self.poisson * self.poisson) / self.young
    }
}

/// Patch thickness `h1(x) = (1 - x²)^ω Σ c_j x^{2j}` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessProfile {
    pub omega: f64,
    pub coeffs: Vec<f64>,
}

impl ThicknessProfile {
    pub fn uniform(h: f64) -> Self {
        Self { omega: 0.0, coeffs: vec![h] }
    }

    /// Even polynomial factor `b(x) = Σ c_j x^{2j}`.
    pub fn regular_part(&self, x: f64) -> f64 {
        let x2 = x * x;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x2 + c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let b = self.regular_part(x);
        if self.omega == 0.0 {
            b
        } else {
            b * (1.0 - x * x).max(0.0).powf(self.omega)
        }
    }
}

/// Patch material and geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchConstants {
    pub young: f64,
    pub poisson: f64,
    pub thickness: ThicknessProfile,
}

impl PatchConstants {
    pub fn new(young: f64, poisson: f64, thickness: ThicknessProfile) -> Result<Self> {
        if !(young > 0.0) {
            return domain("patch modulus must be positive");
        }
        if !(0.0..1.0).contains(&poisson) {
            return domain(format!("patch Poisson ratio must lie in [0, 1), got {poisson}"));
        }
        if !(thickness.omega >= 0.0) || thickness.coeffs.is_empty() {
            return domain("thickness profile needs omega >= 0 and at least one coefficient");
        }
        let grid = crate::integrate::linspace(0.0, 1.0, 65);
        if grid.iter().any(|&x| thickness.regular_part(x) <= 0.0) {
            return domain("thickness must stay positive inside the contact interval");
        }
        Ok(Self { young, poisson, thickness })
    }

    fn factor(&self) -> f64 {
        self.young / (1.0 - self.poisson * self.poisson)
    }

    /// `E(x) = E1 h1(x) / (1 - ν1²)`.
    pub fn stiffness(&self, x: f64) -> f64 {
        self.factor() * self.thickness.eval(x)
    }

    /// Regular part `b0(x)` of `E(x) = b0(x)(1 - x²)^ω`.
    pub fn stiffness_regular(&self, x: f64) -> f64 {
        self.factor() * self.thickness.regular_part(x)
    }
}
