//! Jacobi-polynomial spectral solver for the finite patch.
//!
//! The shear stress perturbation `φ'(t, x) = q(t, x) - q0(x)H(t - t0)` is
//! expanded either as `√(1-x²) Σ X_k P_k^(1/2,1/2)` (ansatz [`Ansatz::N01`],
//! endpoint exponent 1/2) or as `(1-x²)^{3/2} Σ Y_k P_k^(3/2,3/2)`
//! ([`Ansatz::N2`], exponent 3/2). Galerkin projection turns the
//! integro-differential equation into
//!
//! ```text
//! Σ_k [ D_mk (I-L3) + B2_mk (I-L2) + B1_mk (I-L1) ] X_k(t) = g_m(t)
//! ```
//!
//! which is solved either by time marching or, when the three materials age
//! alike, through the scalar time profiles `T_m`.

use std::sync::Arc;

use crate::error::{domain, Result};
use crate::material::{CreepLaw, GlueLayer, PatchConstants, PlateConstants};

mod assembly;
mod forcing;
pub mod presets;
mod stress;
mod time;

pub use assembly::{
    assemble_and_solve, compute_rmk, forcing_moment, glue_diagonal, RKind, SystemMatrices,
};
pub use forcing::{Forcing, Polynomial, SqrtWeighted};
pub use stress::{reconstruct_all, reconstruct_stress, StressField};
pub use time::{compare as compare_solutions, 
    convergence_report, equal_ageing, profile_route, solve_auto, time_profile, volterra_direct, ConvergenceReport,
};

/// Default truncation order.
pub const DEFAULT_TRUNCATION: usize = 12;

/// Basis used for `φ'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ansatz {
    /// `√(1-x²) Σ X_k P_k^(1/2,1/2)`: stiffness bounded away from zero or with a weak edge zero.
    N01,
    /// `(1-x²)^{3/2} Σ Y_k P_k^(3/2,3/2)`: stiffness vanishing like `(1-x²)^{5/2}`.
    N2,
}

impl Ansatz {
    /// Exponent of `(1-x²)` in front of the series.
    pub fn endpoint_exponent(self) -> f64 {
        match self {
            Ansatz::N01 => 0.5,
            Ansatz::N2 => 1.5,
        }
    }

    /// Jacobi parameter of the basis.
    pub fn basis_parameter(self) -> f64 {
        self.endpoint_exponent()
    }
}

/// Full finite-patch scenario. Material laws are ordered patch, plate, glue.
#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub plate: PlateConstants,
    pub patch: PatchConstants,
    pub glue: GlueLayer,
    pub laws: [CreepLaw; 3],
    pub forcing: Arc<dyn Forcing>,
    pub load_instant: f64,
    pub time_grid: Vec<f64>,
    pub ansatz: Ansatz,
    pub truncation: usize,
}

impl ProblemConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        plate: PlateConstants,
        patch: PatchConstants,
        glue: GlueLayer,
        laws: [CreepLaw; 3],
        forcing: Arc<dyn Forcing>,
        time_grid: Vec<f64>,
        ansatz: Ansatz,
        truncation: usize,
    ) -> Result<Self> {
        let load_instant = laws[0].load_instant;
        let cfg = Self { plate, patch, glue, laws, forcing, load_instant, time_grid, ansatz, truncation };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation == 0 {
            return domain("truncation must be at least 1");
        }
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
        let names = ["patch", "plate", "glue"];
        let moduli = [self.patch.young, self.plate.young, self.glue.shear_modulus];
        for ((law, name), m) in self.laws.iter().zip(names).zip(moduli) {
            if !close(law.modulus, m) {
                return domain(format!("{name} creep law modulus {} differs from {m}", law.modulus));
            }
            if law.load_instant != self.load_instant {
                return domain("all creep laws must share the load instant");
            }
        }
        match self.time_grid.first() {
            Some(&t) if t == self.load_instant => {}
            _ => return domain("time grid must start at the load instant"),
        }
        if self.time_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("time grid must be strictly increasing");
        }
        let omega = self.patch.thickness.omega;
        let limit = match self.ansatz {
            Ansatz::N01 => 2.5,
            Ansatz::N2 => 3.5,
        };
        if omega >= limit {
            return Err(crate::Error::SingularIntegrand(format!(
                "stiffness edge exponent {omega} is too strong for the {:?} basis",
                self.ansatz
            )));
        }
        Ok(())
    }

    /// `λ = 2(1 - ν2²)/E2`.
    pub fn lambda(&self) -> f64 {
        self.plate.lambda()
    }

    /// `k0 = h0 / G0`.
    pub fn k0(&self) -> f64 {
        self.glue.compliance()
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        Self { truncation, ..self.clone() }
    }

    pub fn with_times(&self, time_grid: Vec<f64>) -> Self {
        Self { time_grid, ..self.clone() }
    }
}

/// Coefficients of the truncated expansion on the time grid.
#[derive(Debug, Clone)]
pub struct SpectralSolution {
    pub ansatz: Ansatz,
    pub truncation: usize,
    pub times: Vec<f64>,
    /// `coefficients[j][k-1]` is the k-th coefficient at `times[j]`.
    pub coefficients: Vec<Vec<f64>>,
    /// Relative residual of the linear solve at each time.
    pub residuals: Vec<f64>,
    /// 2-norm condition estimate of the system matrix at each time.
    pub conditions: Vec<f64>,
    pub warnings: Vec<String>,
}

impl SpectralSolution {
    pub fn at(&self, t: f64) -> Option<&[f64]> {
        self.times
            .iter()
            .position(|&s| (s - t).abs() <= 1e-9 * t.abs().max(1.0))
            .map(|j| self.coefficients[j].as_slice())
    }
}
