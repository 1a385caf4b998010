//! Gauss–Jacobi rules, Cauchy principal-value integrals over `(-1, 1)` and
//! the closed-form image of weighted Jacobi polynomials under the finite
//! Hilbert transform.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{domain, Result};
use crate::scalar::Real;
use crate::special::{hyp2f1, jacobi, jacobi_derivative, ln_gamma, ln_gamma_signed};

/// Default node count for coefficient integrals.
pub const DEFAULT_RULE_SIZE: usize = 64;

/// An `n`-point Gauss rule for the weight `(1-x)^alpha (1+x)^beta` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub weight_exponents: (T, T),
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`, i.e. `∫ (1-x)^alpha (1+x)^beta f(x) dx`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }

    pub fn total_weight(&self) -> T {
        self.weights.iter().fold(T::zero(), |a, &w| a + w)
    }
}

/// `∫ (1-x)^alpha (1+x)^beta dx = 2^(alpha+beta+1) B(alpha+1, beta+1)`.
pub fn jacobi_moment<T: Real>(alpha: T, beta: T) -> Result<T> {
    let one = T::one();
    let l = (alpha + beta + one) * T::c(2.0).ln() + ln_gamma(alpha + one)? + ln_gamma(beta + one)?
        - ln_gamma(alpha + beta + T::c(2.0))?;
    Ok(l.exp())
}

/// Gauss–Jacobi rule with `n` nodes.
///
/// Nodes come from the Golub–Welsch eigenproblem and are polished by Newton
/// iteration on `P_n^(alpha,beta)`; weights use the closed-form Christoffel
/// numbers. Nodes are returned in increasing order.
pub fn gauss_jacobi_rule<T: Real>(alpha: T, beta: T, n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return domain("quadrature rule needs at least one node");
    }
    let one = T::one();
    let two = T::c(2.0);
    if alpha <= -one || beta <= -one {
        return domain(format!("Gauss-Jacobi exponents must exceed -1, got ({alpha}, {beta})"));
    }
    let ab = alpha + beta;
    // Eigenvalues in f64; Newton polishing below restores full precision in T.
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kk = T::n(k);
        let diag = if k == 0 {
            (beta - alpha) / (ab + two)
        } else {
            (beta * beta - alpha * alpha) / ((two * kk + ab) * (two * kk + ab + two))
        };
        jm[(k, k)] = diag.to_f64();
        if k + 1 < n {
            let j = kk + one;
            let b2 = if k == 0 {
                T::c(4.0) * (one + alpha) * (one + beta) / ((two + ab) * (two + ab) * (T::c(3.0) + ab))
            } else {
                let c = two * j + ab;
                T::c(4.0) * j * (j + alpha) * (j + beta) * (j + ab) / (c * c * (c + one) * (c - one))
            };
            let b = b2.sqrt().to_f64();
            jm[(k, k + 1)] = b;
            jm[(k + 1, k)] = b;
        }
    }
    let eig = SymmetricEigen::new(jm);
    let mut nodes: Vec<T> = eig.eigenvalues.iter().map(|&v| T::c(v)).collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    // ln of Γ(n+a+1)Γ(n+b+1)/(Γ(n+a+b+1) n!) 2^(a+b+1)
    let nn = T::n(n);
    let lc = ln_gamma(nn + alpha + one)? + ln_gamma(nn + beta + one)?
        - ln_gamma(nn + ab + one)?
        - ln_gamma(nn + one)?
        + (ab + one) * two.ln();
    let cst = lc.exp();
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let p = jacobi(alpha, beta, n, *x);
            let dp = jacobi_derivative(alpha, beta, n, *x);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *x -= step;
        }
        let dp = jacobi_derivative(alpha, beta, n, *x);
        weights.push(cst / ((one - *x * *x) * dp * dp));
    }
    Ok(QuadratureRule { nodes, weights, weight_exponents: (alpha, beta) })
}

/// Gauss–Legendre rule (`alpha = beta = 0`).
pub fn gauss_legendre<T: Real>(n: usize) -> Result<QuadratureRule<T>> {
    gauss_jacobi_rule(T::zero(), T::zero(), n)
}

/// Principal-value moment `W(x) = PV ∫ (1-y)^alpha (1+y)^beta / (y - x) dy`.
///
/// Closed forms for `(0,0)` and `(±1/2, ±1/2)`; the Tricomi formula for
/// non-integer `alpha`; otherwise composite Gauss–Legendre with a symmetric
/// excision around the pole.
pub fn pv_weight_moment<T: Real>(alpha: T, beta: T, x: T) -> Result<T> {
    let one = T::one();
    let half = T::c(0.5);
    if x.abs() >= one {
        return domain(format!("principal value needs an interior point, got {x}"));
    }
    if alpha == T::zero() && beta == T::zero() {
        return Ok(((one - x) / (one + x)).ln());
    }
    if alpha == half && beta == half {
        return Ok(-T::PI() * x);
    }
    if alpha == -half && beta == -half {
        return Ok(T::zero());
    }
    if alpha != alpha.round() {
        // (1/π) PV∫ = cot(πα)(1-x)^α(1+x)^β - 2^(α+β)Γ(α)Γ(β+1)/(πΓ(α+β+1)) F(1, -α-β; 1-α; (1-x)/2)
        let w = (one - x).powf(alpha) * (one + x).powf(beta);
        let cot = (T::PI() * alpha).cos() / (T::PI() * alpha).sin();
        let (lga, sga) = ln_gamma_signed(alpha)?;
        let (lgb, sgb) = ln_gamma_signed(beta + one)?;
        let (lgc, sgc) = ln_gamma_signed(alpha + beta + one)?;
        let pref = sga * sgb * sgc * ((alpha + beta) * T::c(2.0).ln() + lga + lgb - lgc).exp() / T::PI();
        let f = hyp2f1(one, -alpha - beta, one - alpha, (one - x) / T::c(2.0))?;
        return Ok(T::PI() * (cot * w - pref * f));
    }
    let weight = |y: T| (one - y).powf(alpha) * (one + y).powf(beta);
    let d = (one - x.abs()).min(T::c(0.5)) * T::c(0.5);
    let rule = gauss_legendre::<T>(48)?;
    let seg = |a: T, b: T, f: &dyn Fn(T) -> T| -> T {
        let panels = 16;
        let h = (b - a) / T::n(panels);
        (0..panels).fold(T::zero(), |acc, p| {
            let lo = a + h * T::n(p);
            acc + rule.integrate(|u| f(lo + h * (u + one) * half)) * h * half
        })
    };
    // symmetric part: ∫_{-d}^{d} (w(x+u) - w(x-u)) / u du over u in (0, d)
    let sym = seg(T::zero(), d, &|u: T| (weight(x + u) - weight(x - u)) / u);
    let left = seg(-one, x - d, &|y: T| weight(y) / (y - x));
    let right = seg(x + d, one, &|y: T| weight(y) / (y - x));
    Ok(sym + left + right)
}

/// `PV ∫_{-1}^{1} (1-y)^alpha (1+y)^beta f(y) / (y - x) dy` by singularity
/// subtraction with an `n`-point Gauss–Jacobi rule.
pub fn cauchy_pv_with<T: Real, F: Fn(T) -> T>(
    f: F,
    rule: &QuadratureRule<T>,
    x: T,
) -> Result<T> {
    let (alpha, beta) = rule.weight_exponents;
    if x.abs() >= T::one() {
        return domain(format!("principal value needs an interior point, got {x}"));
    }
    let fx = f(x);
    let h = T::c(1e-6).max(T::epsilon().sqrt());
    let mut acc = T::zero();
    for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
        let dy = y - x;
        let q = if dy.abs() < T::c(64.0) * T::epsilon() {
            (f(x + h) - f(x - h)) / (T::c(2.0) * h)
        } else {
            (f(y) - fx) / dy
        };
        acc += w * q;
    }
    Ok(acc + fx * pv_weight_moment(alpha, beta, x)?)
}

/// Convenience form of [`cauchy_pv_with`] using [`DEFAULT_RULE_SIZE`] nodes.
pub fn cauchy_pv<T: Real, F: Fn(T) -> T>(f: F, alpha: T, beta: T, x: T) -> Result<T> {
    let rule = gauss_jacobi_rule(alpha, beta, DEFAULT_RULE_SIZE)?;
    cauchy_pv_with(f, &rule, x)
}

/// Right-hand side of the weighted-Jacobi Hilbert relation
/// `PV∫ (1-s^2)^(n-1/2) P_m^(n-1/2,n-1/2)(s) / (s-x) ds = (-1)^n 2^(2n-1) π P_{m+2n-1}^(1/2-n,1/2-n)(x)`.
///
/// Valid for `n >= 1`; for `n = 0` the classical Chebyshev relation carries
/// a factor 2 that this closed form does not reproduce, so it is rejected.
pub fn spectral_image<T: Real>(n: usize, m: usize, x: T) -> Result<T> {
    if n == 0 {
        return domain("spectral_image requires n >= 1");
    }
    if m + 2 * n < 1 {
        return domain("negative image degree");
    }
    if x.abs() > T::one() {
        return domain(format!("spectral_image requires |x| <= 1, got {x}"));
    }
    let a = T::c(0.5) - T::n(n);
    let sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
    let scale = T::c(2.0).powi(2 * n as i32 - 1) * T::PI();
    Ok(sign * scale * jacobi(a, a, m + 2 * n - 1, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn midpoint_rule() {
        let r = gauss_jacobi_rule(0.0_f64, 0.0, 1).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert_relative_eq!(r.weights[0], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(gauss_jacobi_rule(0.0_f64, 0.0, 0).is_err());
        assert!(gauss_jacobi_rule(-1.0_f64, 0.0, 4).is_err());
    }

    #[test]
    fn chebyshev_u_total_weight() {
        for n in [1, 2, 5, 17, 64] {
            let r = gauss_jacobi_rule(0.5_f64, 0.5, n).unwrap();
            assert_relative_eq!(r.total_weight(), PI / 2.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn rule_shape_invariants() {
        for &(a, b) in &[(0.0f64, 0.0f64), (0.5, 0.5), (-0.5, -0.5), (1.5, 1.5), (0.3, -0.7), (2.5, 2.5)] {
            for n in [3usize, 10, 33] {
                let r = gauss_jacobi_rule(a, b, n).unwrap();
                assert_eq!(r.nodes.len(), r.weights.len());
                assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
                assert!(r.weights.iter().all(|&w| w > 0.0));
                let m = jacobi_moment(a, b).unwrap();
                assert!((r.total_weight() - m).abs() < 1e-12 * m);
            }
        }
    }

    #[test]
    fn tricomi_moment_matches_closed_forms() {
        // (3/2, 3/2) via the Tricomi branch against a brute numerical PV
        for &x in &[-0.7, -0.2, 0.0, 0.35, 0.8] {
            let exact = pv_weight_moment(1.5_f64, 1.5, x).unwrap();
            let w = |y: f64| (1.0 - y * y).powf(1.5);
            let rule = gauss_legendre::<f64>(200).unwrap();
            let brute = cauchy_pv_with(w, &rule, x).unwrap();
            assert!((exact - brute).abs() < 1e-9, "x={x}: {exact} vs {brute}");
        }
    }

    #[test]
    fn pv_examples() {
        let p1 = |y: f64| 1.5 * y;
        assert_relative_eq!(cauchy_pv(p1, 0.5, 0.5, 0.0).unwrap(), 3.0 * PI / 4.0, epsilon = 1e-13);
        assert_relative_eq!(cauchy_pv(|_| 1.0, 0.5, 0.5, 0.3).unwrap(), -0.3 * PI, epsilon = 1e-13);
        let odd = cauchy_pv(|y: f64| y.powi(3) + y, 0.5, 0.5, 0.0).unwrap();
        assert!(odd.is_finite());
        assert!(cauchy_pv(|y: f64| y, 0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn spectral_image_anchor() {
        assert_relative_eq!(spectral_image(1, 1, 0.0_f64).unwrap(), 3.0 * PI / 4.0, epsilon = 1e-14);
        assert!(spectral_image::<f64>(0, 3, 0.1).is_err());
    }
}
