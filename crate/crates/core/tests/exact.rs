//! Closed-form cases against their own limits: wedge exponents seen in the
//! computed stress, load balance, the rigid-plate closed form and linearity.

use std::sync::Arc;

use patch_creep::exact::{
    case_a_stress, case_b_exponent, case_b_stress, riemann_factorization, slope_fit, CaseAConfig, CaseBConfig,
    CaseBSolution, SineTraction,
};
use patch_creep::integrate::{linspace, logspace};
use proptest::prelude::*;

#[test]
fn wedge_slope_follows_the_exponent_root() {
    let xs = logspace(1e-6, 1e-4, 17);
    for &k0h in &[2.0, 4.0, 9.0] {
        let cfg = CaseBConfig::elastic(1.0, k0h, 1.0, 1.0).unwrap();
        let st = case_b_stress(&cfg, 0.0, &xs).unwrap();
        let samples: Vec<(f64, f64)> = xs.iter().zip(&st.values).map(|(&x, &v)| (x, v)).collect();
        let fit = slope_fit(&samples, (1e-6, 1e-4)).unwrap();
        let predicted = case_b_exponent(k0h, 1.0).unwrap().exponent;
        assert!((fit.slope - predicted).abs() < 5e-3, "k0h={k0h}: {} vs {predicted}", fit.slope);
    }
}

#[test]
fn wedge_stress_balances_the_load() {
    for &(k0h, lh) in &[(2.0, 1.0), (4.0, 0.5), (0.5, 2.0)] {
        let cfg = CaseBConfig::elastic(1.0, k0h, lh, 2.5).unwrap();
        let sol = CaseBSolution::new(&cfg, 0.0).unwrap();
        assert!((sol.resultant() - 2.5).abs() < 1e-3 * 2.5, "{k0h} {lh}: {}", sol.resultant());
    }
}

#[test]
fn wedge_stress_is_bounded_at_the_loaded_end() {
    let cfg = CaseBConfig::elastic(1.0, 2.0, 1.0, 1.0).unwrap();
    let xs = linspace(0.9, 0.999, 25);
    let st = case_b_stress(&cfg, 0.0, &xs).unwrap();
    let max = st.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let min = st.values.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    assert!(min > 0.0 && max < 10.0 * min, "{min} {max}");
}

#[test]
fn rigid_plate_matches_the_power_law() {
    // λh = 0: τ = (P/√k0h) x^{1/√k0h - 1}
    let k0h: f64 = 4.0;
    let cfg = CaseBConfig::elastic(1.0, k0h, 0.0, 1.0).unwrap();
    let xs = [0.01, 0.2, 0.5, 0.8];
    let st = case_b_stress(&cfg, 0.0, &xs).unwrap();
    for (&x, &v) in xs.iter().zip(&st.values) {
        let exact = x.powf(1.0 / k0h.sqrt() - 1.0) / k0h.sqrt();
        assert!((v - exact).abs() < 1e-7 * exact, "x={x}: {v} vs {exact}");
    }
}

#[test]
fn riemann_factorization_for_the_reference_set() {
    let cfg = CaseBConfig::elastic(1.0, 2.0, 1.0, 1.0).unwrap();
    let table = riemann_factorization(&cfg).unwrap();
    assert_eq!(table.winding, 0);
    assert!(table.max_residual() < 1e-6);
}

#[test]
fn semi_infinite_patch_far_field() {
    let cfg = CaseAConfig::elastic(0.5, 1.0, 2.0, Arc::new(SineTraction { amplitude: 1.0, length: 2.0 })).unwrap();
    let xs = logspace(1e2, 1e4, 15);
    let st = case_a_stress(&cfg, 0.0, &xs).unwrap();
    let samples: Vec<(f64, f64)> = xs.iter().zip(&st.values).map(|(&x, &v)| (x, v.abs())).collect();
    let fit = slope_fit(&samples, (1e2, 1e4)).unwrap();
    assert!(fit.slope <= -1.0, "{}", fit.slope);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn wedge_stress_is_linear_in_the_load(load in -10.0f64..10.0, k0h in 1.0f64..8.0) {
        prop_assume!(load.abs() > 1e-3);
        let xs = [0.05, 0.4, 0.9];
        let unit = case_b_stress(&CaseBConfig::elastic(1.0, k0h, 1.0, 1.0).unwrap(), 0.0, &xs).unwrap();
        let scaled = case_b_stress(&CaseBConfig::elastic(1.0, k0h, 1.0, load).unwrap(), 0.0, &xs).unwrap();
        for (a, b) in unit.values.iter().zip(&scaled.values) {
            prop_assert!((a * load - b).abs() <= 1e-10 * b.abs().max(1e-12));
        }
    }
}
