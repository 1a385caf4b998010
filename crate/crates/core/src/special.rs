//! Jacobi polynomials, Chebyshev identities, Gamma-ratio utilities and the
//! Gauss hypergeometric function.
//!
//! Everything here is generic over [`Real`]. Jacobi polynomials are evaluated
//! by the three-term recurrence; parameter pairs for which the recurrence
//! degenerates (e.g. `(-3/2, -3/2)` at degree 3) fall back to the lowering
//! identity obtained from the Rodrigues formula, so the polynomial stays
//! defined for every real `(alpha, beta)`.

use crate::error::{domain, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
///
/// Lanczos approximation (g = 7) with the reflection formula for `x < 1/2`.
pub fn ln_gamma_signed<T: Real>(x: T) -> Result<(T, T)> {
    if is_nonpositive_integer(x) {
        return domain(format!("Gamma has a pole at {x}"));
    }
    let half = T::c(0.5);
    if x < half {
        // Γ(x)Γ(1-x) = π / sin(πx)
        let s = (T::PI() * x).sin();
        let (lg, sg) = ln_gamma_signed(T::one() - x)?;
        let sign = if s < T::zero() { -sg } else { sg };
        return Ok((T::PI().ln() - s.abs().ln() - lg, sign));
    }
    let z = x - T::one();
    let mut acc = T::c(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += T::c(c) / (z + T::n(i));
    }
    let t = z + T::c(LANCZOS_G) + half;
    let lg = half * (T::c(2.0) * T::PI()).ln() + (z + half) * t.ln() - t + acc.ln();
    Ok((lg, T::one()))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() {
        return domain(format!("ln_gamma requires x > 0, got {x}"));
    }
    ln_gamma_signed(x).map(|(v, _)| v)
}

/// `Γ(x)` for any real `x` away from the poles.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    let (lg, s) = ln_gamma_signed(x)?;
    Ok(s * lg.exp())
}

/// `m^(b-a) Γ(m+a) / Γ(m+b)`, computed through log-gamma.
///
/// Tends to 1 as `m → ∞` for fixed `a`, `b`.
pub fn gamma_ratio<T: Real>(m: T, a: T, b: T) -> Result<T> {
    if m <= T::zero() {
        return domain(format!("gamma_ratio requires m > 0, got {m}"));
    }
    if a == b {
        return Ok(T::one());
    }
    let (la, sa) = ln_gamma_signed(m + a)?;
    let (lb, sb) = ln_gamma_signed(m + b)?;
    Ok(sa * sb * ((b - a) * m.ln() + la - lb).exp())
}

/// Parameters of a Jacobi polynomial `P_m^(alpha, beta)` from the
/// orthogonal family (`alpha, beta > -1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    pub alpha: T,
    pub beta: T,
    pub degree: usize,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(alpha: T, beta: T, degree: usize) -> Result<Self> {
        if alpha <= -T::one() || beta <= -T::one() {
            return domain(format!(
                "Jacobi weight parameters must exceed -1, got ({alpha}, {beta})"
            ));
        }
        Ok(Self { alpha, beta, degree })
    }
}

/// `P_m^(alpha, beta)(x)` for an orthogonal-family parameter set and `|x| <= 1`.
pub fn jacobi_eval<T: Real>(p: JacobiParams<T>, x: T) -> Result<T> {
    if p.alpha <= -T::one() || p.beta <= -T::one() {
        return domain("Jacobi parameters must exceed -1");
    }
    if x.abs() > T::one() {
        return domain(format!("jacobi_eval requires |x| <= 1, got {x}"));
    }
    Ok(jacobi(p.alpha, p.beta, p.degree, x))
}

fn recurrence_degenerates<T: Real>(alpha: T, beta: T, degree: usize) -> bool {
    let ab = alpha + beta;
    (1..degree).any(|n| {
        let nn = T::n(n);
        (nn + ab + T::one()).abs() < T::c(1e-12) || (T::c(2.0) * nn + ab).abs() < T::c(1e-12)
    })
}

/// `P_n^(alpha, beta)(x)` for arbitrary real parameters and argument.
///
/// Unlike [`jacobi_eval`] this performs no validation; it is the pointwise
/// evaluator used for the negative half-integer families.
pub fn jacobi<T: Real>(alpha: T, beta: T, n: usize, x: T) -> T {
    let one = T::one();
    let two = T::c(2.0);
    if n == 0 {
        return one;
    }
    if n == 1 {
        return (alpha + one) + (alpha + beta + two) * (x - one) / two;
    }
    if recurrence_degenerates(alpha, beta, n) {
        // Lowering identity from the Rodrigues formula:
        // P_n^(a,b) = -[(1-x^2) d/dx P_{n-1}^(a+1,b+1) + ((b+1)(1-x) - (a+1)(1+x)) P_{n-1}^(a+1,b+1)] / (2n)
        let nn = T::n(n);
        let p = jacobi(alpha + one, beta + one, n - 1, x);
        let dp = (nn + alpha + beta + two) / two * jacobi(alpha + two, beta + two, n - 2, x);
        let lin = (beta + one) * (one - x) - (alpha + one) * (one + x);
        return -((one - x * x) * dp + lin * p) / (two * nn);
    }
    let ab = alpha + beta;
    let a2b2 = alpha * alpha - beta * beta;
    let mut p_prev = one;
    let mut p = (alpha + one) + (ab + two) * (x - one) / two;
    for k in 1..n {
        let kk = T::n(k);
        let c = two * kk + ab;
        let a1 = two * (kk + one) * (kk + ab + one) * c;
        let a2 = (c + one) * a2b2;
        let a3 = c * (c + one) * (c + two);
        let a4 = two * (kk + alpha) * (kk + beta) * (c + two);
        let next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// `d/dx P_n^(alpha, beta)(x) = (n + alpha + beta + 1)/2 · P_{n-1}^(alpha+1, beta+1)(x)`.
pub fn jacobi_derivative<T: Real>(alpha: T, beta: T, n: usize, x: T) -> T {
    if n == 0 {
        return T::zero();
    }
    (T::n(n) + alpha + beta + T::one()) / T::c(2.0) * jacobi(alpha + T::one(), beta + T::one(), n - 1, x)
}

/// `P_m^(alpha, beta)(1) = Γ(alpha + m + 1) / (Γ(alpha + 1) m!)`.
pub fn jacobi_at_one<T: Real>(alpha: T, m: usize) -> Result<T> {
    let (l1, s1) = ln_gamma_signed(alpha + T::n(m) + T::one())?;
    let (l2, s2) = ln_gamma_signed(alpha + T::one())?;
    let lf = ln_gamma(T::n(m) + T::one())?;
    Ok(s1 * s2 * (l1 - l2 - lf).exp())
}

/// Squared weighted norm `∫ (1-x)^a (1+x)^b [P_n^(a,b)]^2 dx`.
pub fn jacobi_norm_sq<T: Real>(alpha: T, beta: T, n: usize) -> Result<T> {
    let nn = T::n(n);
    let one = T::one();
    let ab1 = alpha + beta + one;
    let ln = ab1 * T::c(2.0).ln() - (T::c(2.0) * nn + ab1).ln() + ln_gamma(nn + alpha + one)?
        + ln_gamma(nn + beta + one)?
        - ln_gamma(nn + ab1)?
        - ln_gamma(nn + one)?;
    Ok(ln.exp())
}

/// Chebyshev polynomial kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

/// `T_m(cos θ) = cos mθ` or `U_m(cos θ) = sin((m+1)θ) / sin θ`, with the
/// limits `U_m(±1)` used at `θ ∈ {0, π}`.
pub fn chebyshev_bridge<T: Real>(kind: ChebyshevKind, m: usize, theta: T) -> T {
    let mm = T::n(m);
    match kind {
        ChebyshevKind::First => (mm * theta).cos(),
        ChebyshevKind::Second => {
            let s = theta.sin();
            if s.abs() < T::c(1e-12) {
                let sign = if theta > T::FRAC_PI_2() && m % 2 == 1 { -T::one() } else { T::one() };
                sign * (mm + T::one())
            } else {
                ((mm + T::one()) * theta).sin() / s
            }
        }
    }
}

/// Gauss hypergeometric function `₂F₁(a, b; c; x)`.
///
/// Summed as a power series; terminates when `a` or `b` is a non-positive
/// integer (then any `x` is accepted).
pub fn hyp2f1<T: Real>(a: T, b: T, c: T, x: T) -> Result<T> {
    if is_nonpositive_integer(c) {
        return domain(format!("hyp2f1: c = {c} is a non-positive integer"));
    }
    let terminates = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if !terminates && x.abs() >= T::one() {
        return domain(format!("hyp2f1: series diverges at |x| = {}", x.abs()));
    }
    let mut sum = T::one();
    let mut term = T::one();
    let eps = T::epsilon();
    for k in 0..100_000usize {
        let kk = T::n(k);
        let num = (a + kk) * (b + kk);
        if num == T::zero() {
            return Ok(sum);
        }
        term = term * num / ((c + kk) * (kk + T::one())) * x;
        sum += term;
        if !terminates && term.abs() <= eps * sum.abs() {
            return Ok(sum);
        }
    }
    if terminates {
        Ok(sum)
    } else {
        domain("hyp2f1: series failed to converge")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(5.0_f64).unwrap(), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(0.5_f64).unwrap(), std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(gamma(-0.5_f64).unwrap(), -2.0 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert!(gamma(-2.0_f64).is_err());
    }

    #[test]
    fn degree_zero_and_one() {
        for &x in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
            let p0 = jacobi_eval(JacobiParams::new(0.5, 0.5, 0).unwrap(), x).unwrap();
            assert_eq!(p0, 1.0);
            let p1 = jacobi_eval(JacobiParams::new(0.5, 0.5, 1).unwrap(), x).unwrap();
            assert_relative_eq!(p1, 1.5 * x, epsilon = 1e-15);
        }
    }

    #[test]
    fn chebyshev_first_kind_value() {
        let v = jacobi(-0.5, -0.5, 2, 0.0_f64);
        assert_relative_eq!(v, -3.0 / 8.0, epsilon = 1e-15);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(JacobiParams::new(-1.0, 0.0, 2).is_err());
        assert!(jacobi_eval(JacobiParams { alpha: -1.5, beta: -1.5, degree: 3 }, 0.2).is_err());
        assert!(jacobi_eval(JacobiParams::new(0.0, 0.0, 3).unwrap(), 1.5).is_err());
    }

    #[test]
    fn degenerate_recurrence_matches_explicit_sum() {
        // P_n^(a,b)(x) = Σ_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
        fn binom(top: f64, k: usize) -> f64 {
            (0..k).fold(1.0, |acc, j| acc * (top - j as f64) / (j as f64 + 1.0))
        }
        let explicit = |a: f64, b: f64, n: usize, x: f64| -> f64 {
            (0..=n)
                .map(|s| {
                    binom(n as f64 + a, n - s)
                        * binom(n as f64 + b, s)
                        * ((x - 1.0) / 2.0).powi(s as i32)
                        * ((x + 1.0) / 2.0).powi((n - s) as i32)
                })
                .sum()
        };
        for n in 0..9 {
            for &x in &[-0.9, -0.2, 0.0, 0.45, 1.0] {
                let got = jacobi(-1.5, -1.5, n, x);
                let want = explicit(-1.5, -1.5, n, x);
                assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "n={n} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn chebyshev_bridge_examples() {
        use std::f64::consts::PI;
        assert_eq!(chebyshev_bridge(ChebyshevKind::First, 7, 0.0), 1.0);
        assert!(chebyshev_bridge(ChebyshevKind::Second, 3, PI / 2.0).abs() < 1e-15);
        assert_relative_eq!(chebyshev_bridge(ChebyshevKind::First, 2, PI / 3.0), -0.5, epsilon = 1e-15);
        assert_relative_eq!(chebyshev_bridge(ChebyshevKind::Second, 4, 0.0), 5.0);
        assert_relative_eq!(chebyshev_bridge(ChebyshevKind::Second, 3, PI), -4.0);
    }

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio(3.7_f64, 0.25, 0.25).unwrap(), 1.0);
        let want = (ln_gamma(2.5_f64).unwrap() - ln_gamma(3.0_f64).unwrap()).exp();
        assert_relative_eq!(gamma_ratio(1.0_f64, 1.5, 2.0).unwrap(), want, max_relative = 1e-14);
        // Γ(2.5)/Γ(3) = (3/4)√π / 2
        assert_relative_eq!(want, 0.375 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert!((gamma_ratio(1000.0_f64, 1.5, 2.0).unwrap() - 1.0).abs() < 1e-3);
        assert!(gamma_ratio(1.0_f64, -1.0, 0.5).is_err());
    }

    #[test]
    fn hyp2f1_examples() {
        assert_eq!(hyp2f1(0.3, 1.7, 2.2, 0.0_f64).unwrap(), 1.0);
        assert_relative_eq!(hyp2f1(1.0, 1.0, 2.0, 0.5_f64).unwrap(), 2.0 * 2f64.ln(), max_relative = 1e-14);
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.5_f64).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.5_f64).is_err());
        // terminating series accepts any x
        assert!(hyp2f1(1.0, -3.0, 2.0, 3.0_f64).is_ok());
    }

    #[test]
    fn hypergeometric_jacobi_identity() {
        // m! P_m^(a,b)(1-2x) = Γ(a+m+1)/Γ(1+a) F(a+b+m+1, -m, 1+a, x)
        let (a, b) = (0.5_f64, 0.5_f64);
        for m in 0..=6usize {
            for &x in &[0.0, 0.1, 0.35, 0.5, 0.8, 1.0] {
                let fact = gamma(m as f64 + 1.0).unwrap();
                let lhs = fact * jacobi(a, b, m, 1.0 - 2.0 * x);
                let pref = gamma(a + m as f64 + 1.0).unwrap() / gamma(1.0 + a).unwrap();
                let rhs = pref * hyp2f1(a + b + m as f64 + 1.0, -(m as f64), 1.0 + a, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn endpoint_value_matches_gamma_formula() {
        for m in 0..12 {
            for &a in &[0.5_f64, 1.5, -0.5, 2.5] {
                let want = jacobi_at_one(a, m).unwrap();
                let got = jacobi(a, a, m, 1.0);
                assert!((got - want).abs() < 1e-12 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn symmetric_parity() {
        for m in 0..15 {
            for i in 0..=20 {
                let x = -1.0 + 0.1 * i as f64;
                for &a in &[0.5_f64, -0.5, 1.5, -1.5, 2.5] {
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    let d = jacobi(a, a, m, -x) - sign * jacobi(a, a, m, x);
                    assert!(d.abs() < 1e-13 * jacobi(a, a, m, 1.0).abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn chebyshev_proportionality() {
        // P_m^(-1/2,-1/2) = Γ(m+1/2)/(√π Γ(m+1)) T_m,  P_m^(1/2,1/2) = 2Γ(m+3/2)/(√π Γ(m+2)) U_m
        let sp = std::f64::consts::PI.sqrt();
        for m in 0..20usize {
            let ct = gamma(m as f64 + 0.5).unwrap() / (sp * gamma(m as f64 + 1.0).unwrap());
            let cu = 2.0 * gamma(m as f64 + 1.5).unwrap() / (sp * gamma(m as f64 + 2.0).unwrap());
            for i in 1..40 {
                let th = std::f64::consts::PI * i as f64 / 40.0;
                let x = th.cos();
                let t = chebyshev_bridge(ChebyshevKind::First, m, th);
                let u = chebyshev_bridge(ChebyshevKind::Second, m, th);
                assert!((jacobi(-0.5, -0.5, m, x) - ct * t).abs() < 1e-13);
                assert!((jacobi(0.5, 0.5, m, x) - cu * u).abs() < 1e-13 * (m as f64 + 1.0));
            }
        }
    }

    #[test]
    fn works_in_single_precision() {
        let v: f32 = jacobi(0.5_f32, 0.5, 1, 0.4);
        assert!((v - 0.6).abs() < 1e-6);
        assert!((gamma_ratio(1000.0_f32, 1.5, 2.0).unwrap() - 1.0).abs() < 1e-3);
    }
}
