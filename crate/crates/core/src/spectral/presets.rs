//! Reference configuration: a polymer glue joining a stiff patch to a plate.

use std::sync::Arc;

use super::{Ansatz, ProblemConfig, SqrtWeighted, DEFAULT_TRUNCATION};
use crate::error::Result;
use crate::material::{AgeingFunction, CreepLaw, GlueLayer, PatchConstants, PlateConstants, ThicknessProfile};

pub const PATCH_YOUNG: f64 = 120e9;
pub const PATCH_POISSON: f64 = 0.5;
pub const PATCH_THICKNESS: f64 = 5e-2;
pub const PLATE_YOUNG: f64 = 95e9;
pub const PLATE_POISSON: f64 = 0.3;
pub const GLUE_THICKNESS: f64 = 5e-4;
/// The two glue shear moduli compared in the reference study.
pub const GLUE_SHEAR_SOFT: f64 = 0.117e9;
pub const GLUE_SHEAR_STIFF: f64 = 11.7e9;
pub const GAMMA: f64 = 0.026;
pub const LOAD_INSTANT: f64 = 45.0;
/// Load amplitudes of `q0 = A√(1-x²)`.
pub const AMPLITUDE_LOW: f64 = 1e5;
pub const AMPLITUDE_HIGH: f64 = 1e7;

/// Glue ageing `φ3(t) = 0.09e-10 + 4.82e-10/t`.
pub fn glue_ageing() -> AgeingFunction {
    AgeingFunction::hyperbolic(0.09e-10, 4.82e-10)
}

/// How the patch and plate ageing functions relate to the glue's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgeingVariant {
    /// `φ1 = 0.0098 φ3`, `φ2 = 0.00123 φ3`.
    Reference,
    /// `E1φ1 = E2φ2 = G0φ3`.
    Equal,
}

pub fn reference(shear_modulus: f64, amplitude: f64, times: Vec<f64>, variant: AgeingVariant) -> Result<ProblemConfig> {
    let phi3 = glue_ageing();
    let (phi1, phi2) = match variant {
        AgeingVariant::Reference => (phi3.scaled(0.0098), phi3.scaled(0.00123)),
        AgeingVariant::Equal => (phi3.scaled(shear_modulus / PATCH_YOUNG), phi3.scaled(shear_modulus / PLATE_YOUNG)),
    };
    let law = |m: f64, a: AgeingFunction| CreepLaw::new(m, a, GAMMA, 0.0, LOAD_INSTANT);
    let laws = [law(PATCH_YOUNG, phi1)?, law(PLATE_YOUNG, phi2)?, law(shear_modulus, phi3)?];
    ProblemConfig::new(
        PlateConstants::new(PLATE_YOUNG, PLATE_POISSON)?,
        PatchConstants::new(PATCH_YOUNG, PATCH_POISSON, ThicknessProfile::uniform(PATCH_THICKNESS))?,
        GlueLayer::new(GLUE_THICKNESS, shear_modulus)?,
        laws,
        Arc::new(SqrtWeighted::semicircle(amplitude)),
        times,
        Ansatz::N01,
        DEFAULT_TRUNCATION,
    )
}

/// Grid from the load instant to `t_end` refined near the load instant,
/// where the creep kernels change fastest.
pub fn time_grid(t_end: f64, steps: usize) -> Vec<f64> {
    let span = t_end - LOAD_INSTANT;
    (0..=steps)
        .map(|i| {
            let s = i as f64 / steps as f64;
            LOAD_INSTANT + span * s * s
        })
        .collect()
}
