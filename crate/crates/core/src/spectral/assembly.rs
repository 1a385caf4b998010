//! Galerkin coefficients, forcing moments and the truncated linear solve.

use nalgebra::{DMatrix, DVector};

use super::{time, Ansatz, ProblemConfig, SpectralSolution};
use crate::error::{domain, Error, Result};
use crate::material::step_response;
use crate::quadrature::{gauss_jacobi_rule, gauss_legendre, QuadratureRule};
use crate::special::{gamma_ratio, jacobi};

/// Which Galerkin coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RKind {
    /// Stiffness term of the `N01` system.
    R1,
    /// Plate term of the `N01` system.
    R2,
    /// Plate term of the `N2` system.
    R3,
    /// Stiffness term of the `N2` system.
    R4,
}

impl RKind {
    fn ansatz(self) -> Ansatz {
        match self {
            RKind::R1 | RKind::R2 => Ansatz::N01,
            RKind::R3 | RKind::R4 => Ansatz::N2,
        }
    }
}

fn rule_size(config: &ProblemConfig, extra: usize) -> usize {
    crate::quadrature::DEFAULT_RULE_SIZE.max(config.truncation + extra)
}

/// Jacobi parameter of the test functions `P_{m+1}^(a,a)`.
fn test_parameter(ansatz: Ansatz) -> f64 {
    match ansatz {
        Ansatz::N01 => -0.5,
        Ansatz::N2 => 0.5,
    }
}

/// Quadrature rule matched to one coefficient family, and the smooth factor
/// left in the integrand once the weight is absorbed.
fn coefficient_rule(config: &ProblemConfig, which: RKind) -> Result<QuadratureRule<f64>> {
    let n = rule_size(config, 16);
    match which {
        RKind::R2 | RKind::R3 => gauss_legendre(n),
        RKind::R1 | RKind::R4 => {
            // (1-x²)^{a+1}/E(x) with E = (1-x²)^ω b0 leaves (1-x²)^{a+1-ω}/b0
            let a = config.ansatz.basis_parameter() + 1.0 - config.patch.thickness.omega;
            if a <= -1.0 {
                return Err(Error::SingularIntegrand(format!(
                    "stiffness vanishes faster than the basis weight (exponent {a})"
                )));
            }
            if a == 0.0 {
                gauss_legendre(n)
            } else {
                gauss_jacobi_rule(a, a, n)
            }
        }
    }
}

fn integrand(config: &ProblemConfig, which: RKind, m: usize, k: usize, x: f64) -> f64 {
    let lambda = config.lambda();
    match which {
        RKind::R1 => {
            0.5 * jacobi(1.5, 1.5, k - 1, x) * jacobi(-0.5, -0.5, m + 1, x) / config.patch.stiffness_regular(x)
        }
        RKind::R2 => -2.0 * lambda * jacobi(-0.5, -0.5, k + 1, x) * jacobi(-0.5, -0.5, m + 1, x),
        RKind::R3 => 8.0 * lambda * jacobi(-1.5, -1.5, k + 3, x) * jacobi(0.5, 0.5, m + 1, x),
        RKind::R4 => {
            0.5 * jacobi(2.5, 2.5, k - 1, x) * jacobi(0.5, 0.5, m + 1, x) / config.patch.stiffness_regular(x)
        }
    }
}

/// One Galerkin coefficient `R_mk`, `m, k >= 1`.
pub fn compute_rmk(config: &ProblemConfig, which: RKind, m: usize, k: usize) -> Result<f64> {
    if m == 0 || k == 0 {
        return domain("Galerkin indices start at 1");
    }
    if which.ansatz() != config.ansatz {
        return domain(format!("{which:?} does not belong to the {:?} system", config.ansatz));
    }
    let rule = coefficient_rule(config, which)?;
    Ok(rule.integrate(|x| integrand(config, which, m, k, x)))
}

/// Diagonal weight of the glue term: `ω_m = (m+1)(Γ(m+3/2)/Γ(m+2))²` for
/// `N01`, `δ_m/k0 = 4(m+1)(Γ(m+5/2)/Γ(m+3))²` for `N2`.
pub fn glue_diagonal(ansatz: Ansatz, m: usize) -> f64 {
    let mm = m as f64;
    // gamma_ratio carries the normalising m^(b-a); strip it (b - a = 1/2)
    match ansatz {
        Ansatz::N01 => (mm + 1.0) * gamma_ratio(mm, 1.5, 2.0).unwrap().powi(2) / mm,
        Ansatz::N2 => 4.0 * (mm + 1.0) * gamma_ratio(mm, 2.5, 3.0).unwrap().powi(2) / mm,
    }
}

/// Time-independent pieces of the truncated system
/// `Σ_k [D (I-L3) + B2 (I-L2) + B1 (I-L1)] X = f2(t) g_λ + f3(t) g_k`.
#[derive(Debug, Clone)]
pub struct SystemMatrices {
    /// Diagonal of `D`.
    pub glue: Vec<f64>,
    pub plate: DMatrix<f64>,
    pub patch: DMatrix<f64>,
    /// Moments of the plate part of the forcing.
    pub forcing_plate: Vec<f64>,
    /// Moments of the glue part of the forcing.
    pub forcing_glue: Vec<f64>,
}

impl SystemMatrices {
    pub fn build(config: &ProblemConfig) -> Result<Self> {
        config.validate()?;
        let n = config.truncation;
        let (plate_kind, patch_kind) = match config.ansatz {
            Ansatz::N01 => (RKind::R2, RKind::R1),
            Ansatz::N2 => (RKind::R3, RKind::R4),
        };
        let k0 = config.k0();
        let glue = (1..=n).map(|m| -k0 * glue_diagonal(config.ansatz, m)).collect();
        let fill = |which: RKind, scale_by_k: bool| -> Result<DMatrix<f64>> {
            let rule = coefficient_rule(config, which)?;
            Ok(DMatrix::from_fn(n, n, |i, j| {
                let (m, k) = (i + 1, j + 1);
                let v = rule.integrate(|x| integrand(config, which, m, k, x));
                if scale_by_k {
                    v / k as f64
                } else {
                    v
                }
            }))
        };
        let plate = fill(plate_kind, false)?;
        let patch = fill(patch_kind, true)?;
        let (forcing_plate, forcing_glue) = forcing_parts(config)?;
        Ok(Self { glue, plate, patch, forcing_plate, forcing_glue })
    }

    pub fn size(&self) -> usize {
        self.glue.len()
    }

    /// `D + B2 + B1`, the matrix when all three operators coincide.
    pub fn combined(&self) -> DMatrix<f64> {
        let mut a = &self.plate + &self.patch;
        for (i, &d) in self.glue.iter().enumerate() {
            a[(i, i)] += d;
        }
        a
    }

    /// `D c3 + B2 c2 + B1 c1` for per-material scalings `c = [c1, c2, c3]`.
    pub fn weighted(&self, c: [f64; 3]) -> DMatrix<f64> {
        let mut a = &self.plate * c[1] + &self.patch * c[0];
        for (i, &d) in self.glue.iter().enumerate() {
            a[(i, i)] += d * c[2];
        }
        a
    }

    /// Forcing moments at time `t`.
    pub fn forcing(&self, config: &ProblemConfig, t: f64) -> Result<DVector<f64>> {
        let f2 = step_response(&config.laws[1], t)?;
        let f3 = step_response(&config.laws[2], t)?;
        Ok(DVector::from_iterator(
            self.size(),
            self.forcing_plate.iter().zip(&self.forcing_glue).map(|(&a, &b)| f2 * a + f3 * b),
        ))
    }
}

/// Plate and glue parts of `g_m`, `m = 1..=N`.
fn forcing_parts(config: &ProblemConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = config.truncation;
    let a = test_parameter(config.ansatz);
    let legendre = gauss_legendre(rule_size(config, 24))?;
    let chebyshev = gauss_jacobi_rule(-0.5, -0.5, rule_size(config, 24))?;
    let lambda = config.lambda();
    let k0 = config.k0();
    let q = &config.forcing;
    let hilbert: Vec<f64> = legendre.nodes.iter().map(|&x| q.hilbert(x)).collect::<Result<_>>()?;
    let mut plate = Vec::with_capacity(n);
    let mut glue = Vec::with_capacity(n);
    for m in 1..=n {
        let pv: f64 = legendre
            .nodes
            .iter()
            .zip(&legendre.weights)
            .zip(&hilbert)
            .map(|((&x, &w), &h)| w * h * jacobi(a, a, m + 1, x))
            .sum();
        plate.push(-lambda / std::f64::consts::PI * pv);
        let d = chebyshev.integrate(|x| q.weighted_derivative(x) * jacobi(a, a, m + 1, x));
        glue.push(-k0 * d);
    }
    Ok((plate, glue))
}

/// `g_m(t)`, the projection of the forcing onto the m-th test function.
pub fn forcing_moment(config: &ProblemConfig, m: usize, t: f64) -> Result<f64> {
    if m == 0 {
        return domain("Galerkin indices start at 1");
    }
    if t < config.load_instant {
        return domain(format!("time {t} precedes the load instant"));
    }
    let cfg = config.with_truncation(m.max(config.truncation));
    let (plate, glue) = forcing_parts(&cfg)?;
    let f2 = step_response(&config.laws[1], t)?;
    let f3 = step_response(&config.laws[2], t)?;
    Ok(f2 * plate[m - 1] + f3 * glue[m - 1])
}

/// Result of one dense solve.
#[derive(Debug, Clone)]
pub(crate) struct DenseSolve {
    pub x: DVector<f64>,
    pub residual: f64,
    pub condition: f64,
}

pub(crate) fn solve_dense(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DenseSolve> {
    let sv = a.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition < 1e14) {
        return Err(Error::SingularSystem { condition });
    }
    let x = a.clone().lu().solve(b).ok_or(Error::SingularSystem { condition })?;
    let r = a * &x - b;
    let scale = b.norm().max(a.norm() * x.norm());
    let residual = if scale > 0.0 { r.norm() / scale } else { 0.0 };
    Ok(DenseSolve { x, residual, condition })
}

/// Solves `(D + B2 + B1) X(t) = T(t)` at a single time using the time
/// profiles; requires the three materials to age alike.
pub fn assemble_and_solve(config: &ProblemConfig, t: f64) -> Result<SpectralSolution> {
    let sys = SystemMatrices::build(config)?;
    let profile = time::profiles(config, &sys, t)?;
    let sol = solve_dense(&sys.combined(), &profile)?;
    Ok(SpectralSolution {
        ansatz: config.ansatz,
        truncation: config.truncation,
        times: vec![t],
        coefficients: vec![sol.x.iter().copied().collect()],
        residuals: vec![sol.residual],
        conditions: vec![sol.condition],
        warnings: Vec::new(),
    })
}
