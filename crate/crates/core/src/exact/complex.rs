//! Complex special functions for the transform pipelines.

use num_complex::Complex64;

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

/// Principal-branch-continuous `ln Γ(z)` for `Re z >= 1/2` (Lanczos), with the
/// reflection formula below that.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        // Γ(z)Γ(1-z) = π / sin(πz)
        return Complex64::new(pi.ln(), 0.0) - (z * pi).sin().ln() - ln_gamma_complex(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `tanh z` that saturates instead of overflowing to NaN for large `|Re z|`.
pub(crate) fn tanh(z: Complex64) -> Complex64 {
    if z.re.abs() > 20.0 {
        Complex64::new(z.re.signum(), 0.0)
    } else {
        z.tanh()
    }
}

/// `coth(πs) tanh(πs/2) = (1 + tanh²(πs/2)) / 2`, free of the 0/0 at `s = 0`.
pub(crate) fn coth_tanh_half(s: Complex64) -> Complex64 {
    let t = tanh(s * (std::f64::consts::PI / 2.0));
    (1.0 + t * t) * 0.5
}

/// `s coth(πs)`, by series near the origin.
pub(crate) fn s_coth_pi(s: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if s.norm() < 1e-3 {
        let p2 = s * s * (pi * pi);
        return (1.0 + p2 / 3.0 - p2 * p2 / 45.0) / pi;
    }
    s / tanh(s * pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ln_gamma;

    #[test]
    fn matches_real_log_gamma() {
        for &x in &[0.3, 1.0, 2.5, 7.25, 30.0] {
            let z = ln_gamma_complex(Complex64::new(x, 0.0));
            assert!((z.re - ln_gamma(x).unwrap()).abs() < 1e-12, "x={x}");
            assert!(z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn recurrence_and_modulus() {
        let z = Complex64::new(1.3, 2.7);
        let lhs = ln_gamma_complex(z + 1.0);
        let rhs = ln_gamma_complex(z) + z.ln();
        assert!(((lhs - rhs).exp() - 1.0).norm() < 1e-12);
        // |Γ(1 + iy)|² = πy / sinh(πy)
        let y: f64 = 3.0;
        let g = ln_gamma_complex(Complex64::new(1.0, y)).exp().norm_sqr();
        let pi = std::f64::consts::PI;
        assert!((g - pi * y / (pi * y).sinh()).abs() < 1e-13);
    }

    #[test]
    fn removable_points() {
        assert!((coth_tanh_half(Complex64::new(0.0, 0.0)) - 0.5).norm() < 1e-15);
        let s = Complex64::new(0.7, 0.2);
        let pi = std::f64::consts::PI;
        let direct = (s * pi / 2.0).tanh() / (s * pi).tanh();
        assert!((coth_tanh_half(s) - direct).norm() < 1e-14);
        let s = 9e-4;
        assert!((s_coth_pi(Complex64::new(s, 0.0)).re - s / (pi * s).tanh()).abs() < 1e-15);
        assert!((s_coth_pi(Complex64::new(0.0, 0.0)).re - 1.0 / pi).abs() < 1e-15);
        assert_eq!(s_coth_pi(Complex64::new(-1e6, 0.3)), Complex64::new(1e6, -0.3));
    }
}
