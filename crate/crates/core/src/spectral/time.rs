//! Time dependence: scalar time profiles under equal ageing, and direct
//! product-integration marching of the coupled Volterra system.

use nalgebra::DVector;

use super::assembly::{solve_dense, SystemMatrices};
use super::{ProblemConfig, SpectralSolution};
use crate::error::{domain, Error, Result};
use crate::integrate::adaptive;
use crate::material::{exponential_step_weights, step_response, CreepLaw};

/// Whether `E1φ1 = E2φ2 = G0φ3` (and the relaxation rates agree) on the time grid.
pub fn equal_ageing(config: &ProblemConfig) -> bool {
    let [l1, l2, l3] = &config.laws;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()) + 1e-300;
    if !(close(l1.gamma, l3.gamma) && close(l2.gamma, l3.gamma)) {
        return false;
    }
    let mut times = config.time_grid.clone();
    let last = *times.last().unwrap_or(&config.load_instant);
    times.extend((0..=16).map(|i| config.load_instant + (last - config.load_instant) * i as f64 / 16.0));
    times.iter().all(|&t| {
        let c = l3.intensity(t);
        close(l1.intensity(t), c) && close(l2.intensity(t), c)
    })
}

/// Solves `(I - L)Z = g` at time `t` for a single law:
/// `Z(t) = g(t) + Mφ(t) (1/w(t)) ∫ γ g(s) w(s) ds` with `w` the integrating factor.
pub(crate) fn invert_operator<F: Fn(f64) -> f64>(law: &CreepLaw, g: F, t: f64) -> Result<f64> {
    let t0 = law.load_instant;
    if t < t0 {
        return domain(format!("time {t} precedes the load instant {t0}"));
    }
    let c = law.intensity(t);
    if c == 0.0 || t == t0 {
        return Ok(g(t));
    }
    let ln_w = |s: f64| law.gamma * ((s - t0) - law.modulus * law.running_integral(s));
    let end = ln_w(t);
    let q = adaptive(|s| law.gamma * g(s) * (ln_w(s) - end).exp(), t0, t, 0.0, 1e-12);
    Ok(g(t) + c * q.value)
}

/// `T_m(t)`: the m-th forcing moment pushed through `(I - L)^{-1}`.
///
/// Needs equal ageing; otherwise the system does not decouple and
/// [`volterra_direct`] must be used.
pub fn time_profile(config: &ProblemConfig, m: usize, t: f64) -> Result<f64> {
    if !equal_ageing(config) {
        return Err(Error::Precondition(
            "materials do not age alike; use the Volterra marching route".into(),
        ));
    }
    if m == 0 {
        return domain("Galerkin indices start at 1");
    }
    let cfg = config.with_truncation(m.max(config.truncation));
    let sys = SystemMatrices::build(&cfg)?;
    Ok(profiles(&cfg, &sys, t)?[m - 1])
}

pub(crate) fn profiles(config: &ProblemConfig, sys: &SystemMatrices, t: f64) -> Result<DVector<f64>> {
    if !equal_ageing(config) {
        return Err(Error::Precondition(
            "materials do not age alike; use the Volterra marching route".into(),
        ));
    }
    let law = &config.laws[2];
    let f2 = |s: f64| step_response(&config.laws[1], s).unwrap_or(f64::NAN);
    let f3 = |s: f64| step_response(&config.laws[2], s).unwrap_or(f64::NAN);
    // both parts are linear in the time factors, so invert each factor once
    let p2 = invert_operator(law, f2, t)?;
    let p3 = invert_operator(law, f3, t)?;
    Ok(DVector::from_iterator(
        sys.size(),
        sys.forcing_plate.iter().zip(&sys.forcing_glue).map(|(&a, &b)| p2 * a + p3 * b),
    ))
}

/// Coefficients on the whole grid from the time profiles.
pub fn profile_route(config: &ProblemConfig) -> Result<SpectralSolution> {
    let sys = SystemMatrices::build(config)?;
    let a = sys.combined();
    let mut out = empty_solution(config);
    for &t in &config.time_grid {
        let sol = solve_dense(&a, &profiles(config, &sys, t)?)?;
        push(&mut out, t, sol);
    }
    Ok(out)
}

fn empty_solution(config: &ProblemConfig) -> SpectralSolution {
    SpectralSolution {
        ansatz: config.ansatz,
        truncation: config.truncation,
        times: Vec::new(),
        coefficients: Vec::new(),
        residuals: Vec::new(),
        conditions: Vec::new(),
        warnings: Vec::new(),
    }
}

fn push(out: &mut SpectralSolution, t: f64, sol: super::assembly::DenseSolve) {
    out.times.push(t);
    out.coefficients.push(sol.x.iter().copied().collect());
    out.residuals.push(sol.residual);
    out.conditions.push(sol.condition);
}

/// Marches the coupled Volterra system over `config.time_grid` with the
/// exponential trapezoid rule, at truncation `n`.
pub fn volterra_direct(config: &ProblemConfig, n: usize) -> Result<SpectralSolution> {
    let config = config.with_truncation(n);
    if config.time_grid.len() < 2 {
        return domain("time marching needs at least two grid points");
    }
    let sys = SystemMatrices::build(&config)?;
    let apply = |i: usize, v: &DVector<f64>| -> DVector<f64> {
        match i {
            0 => &sys.patch * v,
            1 => &sys.plate * v,
            _ => v.component_mul(&DVector::from_column_slice(&sys.glue)),
        }
    };
    let mut out = empty_solution(&config);
    let times = &config.time_grid;
    let first = solve_dense(&sys.combined(), &sys.forcing(&config, times[0])?)?;
    let mut x_prev = first.x.clone();
    push(&mut out, times[0], first);
    let mut z = vec![DVector::zeros(n); 3];
    let mut warned = false;
    for j in 1..times.len() {
        let (t, h) = (times[j], times[j] - times[j - 1]);
        let mut scale = [1.0; 3];
        let mut rhs = sys.forcing(&config, t)?;
        let mut b_weights = [0.0; 3];
        for (i, law) in config.laws.iter().enumerate() {
            let g = law.gamma;
            if g * h > 5.0 && !warned {
                out.warnings.push(format!(
                    "step {h} at t = {t} under-resolves the kernel (gamma*dt = {:.2})",
                    g * h
                ));
                warned = true;
            }
            let (a, b) = exponential_step_weights(g, h);
            z[i] = &z[i] * (-g * h).exp() + &x_prev * (g * a);
            b_weights[i] = g * b;
            let c = law.intensity(t);
            scale[i] = 1.0 - c * g * b;
            rhs += apply(i, &z[i]) * c;
        }
        let sol = solve_dense(&sys.weighted(scale), &rhs)?;
        for (zi, &bw) in z.iter_mut().zip(&b_weights) {
            *zi += &sol.x * bw;
        }
        x_prev = sol.x.clone();
        push(&mut out, t, sol);
    }
    Ok(out)
}

/// Comparison of truncations `N` and `N - 2`.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub truncation: usize,
    pub coarse_truncation: usize,
    /// Largest componentwise difference over shared coefficients and times.
    pub max_abs_diff: f64,
    /// `max_abs_diff / max |X|` of the finer solution.
    pub max_rel_diff: f64,
}

pub fn convergence_report(config: &ProblemConfig) -> Result<ConvergenceReport> {
    let n = config.truncation;
    if n < 3 {
        return domain("convergence report needs truncation >= 3");
    }
    let fine = solve_auto(config, n)?;
    let coarse = solve_auto(config, n - 2)?;
    Ok(compare(&fine, &coarse))
}

pub fn compare(fine: &SpectralSolution, coarse: &SpectralSolution) -> ConvergenceReport {
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (xf, xc) in fine.coefficients.iter().zip(&coarse.coefficients) {
        for (k, &v) in xf.iter().enumerate() {
            scale = scale.max(v.abs());
            if let Some(&c) = xc.get(k) {
                diff = diff.max((v - c).abs());
            } else {
                diff = diff.max(v.abs());
            }
        }
    }
    ConvergenceReport {
        truncation: fine.truncation,
        coarse_truncation: coarse.truncation,
        max_abs_diff: diff,
        max_rel_diff: if scale > 0.0 { diff / scale } else { 0.0 },
    }
}

/// Time profiles when the materials age alike, time marching otherwise.
pub fn solve_auto(config: &ProblemConfig, n: usize) -> Result<SpectralSolution> {
    let cfg = config.with_truncation(n);
    if equal_ageing(&cfg) {
        profile_route(&cfg)
    } else if cfg.time_grid.len() == 1 {
        let sys = SystemMatrices::build(&cfg)?;
        let mut out = empty_solution(&cfg);
        push(&mut out, cfg.time_grid[0], solve_dense(&sys.combined(), &sys.forcing(&cfg, cfg.time_grid[0])?)?);
        Ok(out)
    } else {
        volterra_direct(&cfg, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::AgeingFunction;
    use crate::spectral::presets::{reference, time_grid, AgeingVariant, AMPLITUDE_LOW, GLUE_SHEAR_SOFT};

    #[test]
    fn inversion_without_creep_is_identity() {
        let law = CreepLaw::elastic(1.0, 0.026, 45.0).unwrap();
        let v = invert_operator(&law, |t| 3.0 * (t - 45.0), 245.0).unwrap();
        assert_eq!(v, 600.0);
    }

    #[test]
    fn inversion_undoes_the_operator() {
        let law = CreepLaw::new(2.0, AgeingFunction::hyperbolic(0.1, 3.0), 0.05, 5.0, 10.0).unwrap();
        let g = |t: f64| (0.03 * t).cos() + 0.5;
        // (I - L) applied to the inverse must return g
        let z = |t: f64| invert_operator(&law, g, t).unwrap();
        for &t in &[10.0, 14.0, 40.0, 90.0] {
            let back = crate::material::apply_time_operator(&law, z, t).unwrap();
            assert!((back - g(t)).abs() < 1e-8, "t={t}: {back} vs {}", g(t));
        }
        // a step pushed through the inverse of its own step response is a step
        let f = |t: f64| step_response(&law, t).unwrap();
        assert!((invert_operator(&law, f, 70.0).unwrap() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn profile_needs_equal_ageing() {
        let c = reference(GLUE_SHEAR_SOFT, AMPLITUDE_LOW, vec![45.0, 100.0], AgeingVariant::Reference).unwrap();
        assert!(!equal_ageing(&c));
        assert!(matches!(time_profile(&c, 2, 100.0), Err(Error::Precondition(_))));
        let c = reference(GLUE_SHEAR_SOFT, AMPLITUDE_LOW, vec![45.0, 100.0], AgeingVariant::Equal).unwrap();
        assert!(equal_ageing(&c));
        // equal ageing: the profile of a step-loaded problem is the elastic moment
        let elastic = SystemMatrices::build(&c).unwrap();
        let want = elastic.forcing_plate[1] + elastic.forcing_glue[1];
        assert!((time_profile(&c, 2, 100.0).unwrap() - want).abs() < 1e-10 * want.abs());
        assert!((time_profile(&c, 2, 45.0).unwrap() - want).abs() < 1e-14 * want.abs());
    }

    #[test]
    fn first_marching_slice_is_elastic() {
        let c = reference(GLUE_SHEAR_SOFT, AMPLITUDE_LOW, time_grid(500.0, 20), AgeingVariant::Reference).unwrap();
        let sol = volterra_direct(&c, 8).unwrap();
        let sys = SystemMatrices::build(&c.with_truncation(8)).unwrap();
        let x = sys.combined().lu().solve(&sys.forcing(&c, 45.0).unwrap()).unwrap();
        for (a, b) in sol.coefficients[0].iter().zip(x.iter()) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        assert!(sol.residuals.iter().all(|&r| r < 1e-10));
        assert!(sol.warnings.is_empty());
    }

    #[test]
    fn no_creep_gives_constant_coefficients() {
        let mut c = reference(GLUE_SHEAR_SOFT, AMPLITUDE_LOW, time_grid(300.0, 10), AgeingVariant::Reference).unwrap();
        for law in c.laws.iter_mut() {
            law.aging = AgeingFunction::ZERO;
        }
        let sol = volterra_direct(&c, 6).unwrap();
        for x in &sol.coefficients {
            for (a, b) in x.iter().zip(&sol.coefficients[0]) {
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn coarse_steps_are_flagged() {
        let c = reference(GLUE_SHEAR_SOFT, AMPLITUDE_LOW, vec![45.0, 400.0], AgeingVariant::Reference).unwrap();
        assert_eq!(volterra_direct(&c, 4).unwrap().warnings.len(), 1);
    }
}
