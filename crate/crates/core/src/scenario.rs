//! Scenario files and the runner behind the command-line tool.
//!
//! A scenario is one TOML document. Units: moduli in Pa, lengths in m, times
//! in days, `gamma` in 1/day. Ageing follows `φ3(t) = a + b/t` for the glue,
//! `φ1 = c1 φ3` for the patch and `φ2 = c2 φ3` for the plate; leaving `c1`
//! and `c2` out selects equal creep intensities (`E1φ1 = E2φ2 = G0φ3`).
//!
//! ```toml
//! kind = "solve-finite"
//! output = "out"
//!
//! [materials]
//! patch_young = 120e9
//! patch_poisson = 0.5
//! plate_young = 95e9
//! plate_poisson = 0.3
//! glue_shear = 0.117e9
//! gamma = 0.026
//! load_instant = 45.0
//!
//! [materials.ageing]
//! a = 0.09e-10
//! b = 4.82e-10
//! c1 = 0.0098
//! c2 = 0.00123
//!
//! [geometry]
//! glue_thickness = 5e-4
//! stiffness = { law = "uniform", thickness = 5e-2 }
//!
//! [forcing]
//! type = "sqrt-weighted"
//! coeffs = [1e5]
//!
//! [numeric]
//! truncation = 12
//! times = [45.0, 2500.0, 9000.0]
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    case_b_exponent, riemann_factorization, slope_fit, strip_factorization, CaseAConfig, CaseASolution,
    CaseBConfig, CaseBSolution, SineTraction,
};
use crate::integrate::{linspace, logspace};
use crate::material::{AgeingFunction, CreepLaw, GlueLayer, PatchConstants, PlateConstants, ThicknessProfile};
use crate::spectral::{
    compare_solutions, reconstruct_all, solve_auto, Ansatz, ConvergenceReport, Forcing, Polynomial, ProblemConfig,
    SqrtWeighted,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    /// Finite patch on `[-1, 1]`, spectral solver.
    SolveFinite,
    /// Semi-infinite patch with stiffness `h x²`.
    CaseA,
    /// Wedge patch with stiffness `h x` on `(0, 1)`.
    CaseB,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::SolveFinite => "solve-finite",
            ScenarioKind::CaseA => "case-a",
            ScenarioKind::CaseB => "case-b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ageing {
    /// 1/Pa
    pub a: f64,
    /// day/Pa
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Materials {
    pub patch_young: f64,
    pub patch_poisson: f64,
    pub plate_young: f64,
    pub plate_poisson: f64,
    pub glue_shear: f64,
    pub gamma: f64,
    pub load_instant: f64,
    /// `ρ` for patch, plate and glue, in days.
    #[serde(default)]
    pub age_shift: [f64; 3],
    pub ageing: Ageing,
}

/// Patch stiffness law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Stiffness {
    /// Constant patch thickness (m).
    Uniform { thickness: f64 },
    /// Thickness `(1 - x²)^omega Σ coeffs[j] x^{2j}` (m).
    Profile { omega: f64, coeffs: Vec<f64> },
    /// Stiffness `h x²` (Pa·m per unit length squared); case A.
    Parabolic { h: f64 },
    /// Stiffness `h x`; case B, whose glue thickness also grows like `x`.
    Linear { h: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    /// m; for case B the slope of the glue thickness.
    pub glue_thickness: f64,
    pub stiffness: Stiffness,
}

/// Applied load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ForcingSpec {
    /// `q0 = √(1-x²) Σ coeffs[j] x^j` (Pa).
    SqrtWeighted { coeffs: Vec<f64> },
    /// `q0 = Σ coeffs[j] x^j` (Pa).
    Polynomial { coeffs: Vec<f64> },
    /// Self-balanced traction `amplitude·sin(2πx/L) sin²(πx/L)` on `(0, L)`, `L = length`; case A.
    Sine { amplitude: f64, length: f64 },
    /// Point force (N per unit width) at the thick end; case B.
    Point { load: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzName {
    N01,
    N2,
}

impl From<AnsatzName> for Ansatz {
    fn from(a: AnsatzName) -> Self {
        match a {
            AnsatzName::N01 => Ansatz::N01,
            AnsatzName::N2 => Ansatz::N2,
        }
    }
}

/// Discretisation and tolerances; every field has a default and the report
/// echoes the effective values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numeric {
    pub truncation: usize,
    pub ansatz: AnsatzName,
    /// Explicit time grid (days); must start at the load instant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    /// Used when `times` is absent: `time_steps` steps from the load instant
    /// to `time_end`, refined near the load instant. Defaults to 500 days
    /// after loading.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_end: Option<f64>,
    pub time_steps: usize,
    pub x_points: usize,
    /// Stress grid; defaults to `[-1, 1]` (finite), `[1e-2, 1e4]` (case A)
    /// and `[1e-6, 0.99]` (case B). Exact cases use logarithmic spacing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_range: Option<[f64; 2]>,
    /// Fit window for the exponent; defaults to `[1e2, 1e4]` (case A) and
    /// `[1e-6, 1e-4]` (case B).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_window: Option<[f64; 2]>,
    /// Relative `N` vs `N - 2` coefficient change.
    pub convergence_tolerance: f64,
    /// `|φ(t, 1)|` relative to the largest stress.
    pub endpoint_tolerance: f64,
    /// `|∫φ' dx|` relative to the largest stress.
    pub equilibrium_tolerance: f64,
    /// Relative residual of the linear solves.
    pub residual_tolerance: f64,
    pub factorization_tolerance: f64,
    /// Case B: fitted slope against the predicted exponent.
    pub exponent_tolerance: f64,
    /// Case B: resultant against the load, relative.
    pub balance_tolerance: f64,
    /// Case A: the far-field slope must not exceed this.
    pub far_slope_bound: f64,
}

impl Default for Numeric {
    fn default() -> Self {
        Self {
            truncation: crate::spectral::DEFAULT_TRUNCATION,
            ansatz: AnsatzName::N01,
            times: None,
            time_end: None,
            time_steps: 50,
            x_points: 49,
            x_range: None,
            slope_window: None,
            convergence_tolerance: 1e-6,
            endpoint_tolerance: 1e-10,
            equilibrium_tolerance: 1e-8,
            residual_tolerance: 1e-8,
            factorization_tolerance: 1e-6,
            exponent_tolerance: 0.05,
            balance_tolerance: 1e-3,
            far_slope_bound: -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: ScenarioKind,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    pub materials: Materials,
    pub geometry: Geometry,
    pub forcing: ForcingSpec,
    #[serde(default)]
    pub numeric: Numeric,
}

fn default_output() -> PathBuf {
    PathBuf::from("output")
}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        config_err(format!("{name} must be positive and finite, got {v}"))
    }
}

impl ScenarioFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.materials;
        positive("materials.patch_young", m.patch_young)?;
        positive("materials.plate_young", m.plate_young)?;
        positive("materials.glue_shear", m.glue_shear)?;
        positive("materials.gamma", m.gamma)?;
        positive("materials.load_instant", m.load_instant)?;
        for (name, nu) in [("materials.patch_poisson", m.patch_poisson), ("materials.plate_poisson", m.plate_poisson)] {
            if !(0.0..1.0).contains(&nu) {
                return config_err(format!("{name} must lie in [0, 1), got {nu}"));
            }
        }
        if m.age_shift.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return config_err("materials.age_shift entries must be finite and non-negative");
        }
        let ag = &m.ageing;
        if !(ag.a >= 0.0 && ag.b >= 0.0 && ag.a.is_finite() && ag.b.is_finite()) {
            return config_err("materials.ageing.a and materials.ageing.b must be non-negative");
        }
        if ag.c1.is_some() != ag.c2.is_some() {
            return config_err("materials.ageing needs both c1 and c2, or neither");
        }
        for (name, c) in [("materials.ageing.c1", ag.c1), ("materials.ageing.c2", ag.c2)] {
            if let Some(c) = c {
                if !(c >= 0.0 && c.is_finite()) {
                    return config_err(format!("{name} must be non-negative, got {c}"));
                }
            }
        }
        positive("geometry.glue_thickness", self.geometry.glue_thickness)?;

        let stiffness_ok = matches!(
            (self.kind, &self.geometry.stiffness),
            (ScenarioKind::SolveFinite, Stiffness::Uniform { .. } | Stiffness::Profile { .. })
                | (ScenarioKind::CaseA, Stiffness::Parabolic { .. })
                | (ScenarioKind::CaseB, Stiffness::Linear { .. })
        );
        if !stiffness_ok {
            return config_err(format!("geometry.stiffness law does not fit a {} scenario", self.kind.name()));
        }
        match &self.geometry.stiffness {
            Stiffness::Uniform { thickness } => positive("geometry.stiffness.thickness", *thickness)?,
            Stiffness::Profile { omega, coeffs } => {
                if !(*omega >= 0.0) || coeffs.is_empty() {
                    return config_err("geometry.stiffness needs omega >= 0 and at least one coefficient");
                }
            }
            Stiffness::Parabolic { h } | Stiffness::Linear { h } => positive("geometry.stiffness.h", *h)?,
        }

        let forcing_ok = matches!(
            (self.kind, &self.forcing),
            (ScenarioKind::SolveFinite, ForcingSpec::SqrtWeighted { .. } | ForcingSpec::Polynomial { .. })
                | (ScenarioKind::CaseA, ForcingSpec::Sine { .. })
                | (ScenarioKind::CaseB, ForcingSpec::Point { .. })
        );
        if !forcing_ok {
            return config_err(format!("forcing type does not fit a {} scenario", self.kind.name()));
        }
        match &self.forcing {
            ForcingSpec::SqrtWeighted { coeffs } | ForcingSpec::Polynomial { coeffs } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return config_err("forcing.coeffs must be a non-empty list of finite numbers");
                }
            }
            ForcingSpec::Sine { amplitude, length } => {
                if !amplitude.is_finite() {
                    return config_err("forcing.amplitude must be finite");
                }
                positive("forcing.length", *length)?;
            }
            ForcingSpec::Point { load } => {
                if !load.is_finite() {
                    return config_err("forcing.load must be finite");
                }
            }
        }

        let n = &self.numeric;
        if n.truncation == 0 {
            return config_err("numeric.truncation must be at least 1");
        }
        if n.x_points < 2 {
            return config_err("numeric.x_points must be at least 2");
        }
        for (name, tol) in [
            ("numeric.convergence_tolerance", n.convergence_tolerance),
            ("numeric.endpoint_tolerance", n.endpoint_tolerance),
            ("numeric.equilibrium_tolerance", n.equilibrium_tolerance),
            ("numeric.residual_tolerance", n.residual_tolerance),
            ("numeric.factorization_tolerance", n.factorization_tolerance),
            ("numeric.exponent_tolerance", n.exponent_tolerance),
            ("numeric.balance_tolerance", n.balance_tolerance),
        ] {
            positive(name, tol)?;
        }
        self.time_grid()?;
        let [lo, hi] = self.x_range();
        let range_ok = match self.kind {
            ScenarioKind::SolveFinite => -1.0 <= lo && lo < hi && hi <= 1.0,
            ScenarioKind::CaseA => 0.0 < lo && lo < hi && hi.is_finite(),
            ScenarioKind::CaseB => 0.0 < lo && lo < hi && hi < 1.0,
        };
        if !range_ok {
            return config_err(format!("numeric.x_range [{lo}, {hi}] is invalid for a {} scenario", self.kind.name()));
        }
        if let Some([a, b]) = n.slope_window {
            if !(0.0 < a && a < b) {
                return config_err("numeric.slope_window must satisfy 0 < lo < hi");
            }
        }
        Ok(())
    }

    /// Effective time grid.
    pub fn time_grid(&self) -> Result<Vec<f64>> {
        let t0 = self.materials.load_instant;
        let n = &self.numeric;
        let grid = match &n.times {
            Some(times) => {
                if n.time_end.is_some() {
                    return config_err("numeric.times and numeric.time_end are mutually exclusive");
                }
                times.clone()
            }
            None => {
                let end = n.time_end.unwrap_or(t0 + 500.0);
                if !(end > t0) {
                    return config_err(format!("numeric.time_end must exceed the load instant {t0}"));
                }
                if n.time_steps == 0 {
                    return config_err("numeric.time_steps must be at least 1");
                }
                (0..=n.time_steps)
                    .map(|i| {
                        let s = i as f64 / n.time_steps as f64;
                        t0 + (end - t0) * s * s
                    })
                    .collect()
            }
        };
        if grid.first() != Some(&t0) {
            return config_err(format!("numeric.times must start at the load instant {t0}"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|t| !t.is_finite()) {
            return config_err("numeric.times must be finite and strictly increasing");
        }
        Ok(grid)
    }

    pub fn x_range(&self) -> [f64; 2] {
        self.numeric.x_range.unwrap_or(match self.kind {
            ScenarioKind::SolveFinite => [-1.0, 1.0],
            ScenarioKind::CaseA => [1e-2, 1e4],
            ScenarioKind::CaseB => [1e-6, 0.99],
        })
    }

    pub fn slope_window(&self) -> [f64; 2] {
        self.numeric.slope_window.unwrap_or(match self.kind {
            ScenarioKind::CaseB => [1e-6, 1e-4],
            _ => [1e2, 1e4],
        })
    }

    fn x_grid(&self) -> Vec<f64> {
        let [lo, hi] = self.x_range();
        match self.kind {
            ScenarioKind::SolveFinite => linspace(lo, hi, self.numeric.x_points),
            _ => logspace(lo, hi, self.numeric.x_points),
        }
    }

    /// Patch, plate and glue creep laws.
    pub fn laws(&self) -> Result<[CreepLaw; 3]> {
        let m = &self.materials;
        let phi3 = AgeingFunction::hyperbolic(m.ageing.a, m.ageing.b);
        let (c1, c2) = match (m.ageing.c1, m.ageing.c2) {
            (Some(c1), Some(c2)) => (c1, c2),
            _ => (m.glue_shear / m.patch_young, m.glue_shear / m.plate_young),
        };
        let law = |modulus: f64, phi: AgeingFunction, rho: f64| CreepLaw::new(modulus, phi, m.gamma, rho, m.load_instant);
        Ok([
            law(m.patch_young, phi3.scaled(c1), m.age_shift[0])?,
            law(m.plate_young, phi3.scaled(c2), m.age_shift[1])?,
            law(m.glue_shear, phi3, m.age_shift[2])?,
        ])
    }

    /// Finite-patch problem described by the file.
    pub fn problem_config(&self) -> Result<ProblemConfig> {
        let m = &self.materials;
        let thickness = match &self.geometry.stiffness {
            Stiffness::Uniform { thickness } => ThicknessProfile::uniform(*thickness),
            Stiffness::Profile { omega, coeffs } => ThicknessProfile { omega: *omega, coeffs: coeffs.clone() },
            _ => return config_err("finite patch needs a uniform or profile stiffness law"),
        };
        let forcing: Arc<dyn Forcing> = match &self.forcing {
            ForcingSpec::SqrtWeighted { coeffs } => Arc::new(SqrtWeighted::new(coeffs.clone())),
            ForcingSpec::Polynomial { coeffs } => Arc::new(Polynomial::new(coeffs.clone())),
            _ => return config_err("finite patch needs a sqrt-weighted or polynomial forcing"),
        };
        ProblemConfig::new(
            PlateConstants::new(m.plate_young, m.plate_poisson)?,
            PatchConstants::new(m.patch_young, m.patch_poisson, thickness)?,
            GlueLayer::new(self.geometry.glue_thickness, m.glue_shear)?,
            self.laws()?,
            forcing,
            self.time_grid()?,
            self.numeric.ansatz.into(),
            self.numeric.truncation,
        )
    }

    fn compliances(&self) -> Result<(f64, f64)> {
        let m = &self.materials;
        let k0 = GlueLayer::new(self.geometry.glue_thickness, m.glue_shear)?.compliance();
        Ok((k0, PlateConstants::new(m.plate_young, m.plate_poisson)?.lambda()))
    }

    pub fn case_a_config(&self) -> Result<CaseAConfig> {
        let (Stiffness::Parabolic { h }, ForcingSpec::Sine { amplitude, length }) = (&self.geometry.stiffness, &self.forcing)
        else {
            return config_err("case A needs a parabolic stiffness law and a sine forcing");
        };
        let (k0, lambda) = self.compliances()?;
        CaseAConfig::new(*h, k0, lambda, Arc::new(SineTraction { amplitude: *amplitude, length: *length }), self.laws()?)
    }

    pub fn case_b_config(&self) -> Result<CaseBConfig> {
        let (Stiffness::Linear { h }, ForcingSpec::Point { load }) = (&self.geometry.stiffness, &self.forcing) else {
            return config_err("case B needs a linear stiffness law and a point forcing");
        };
        let (k0, lambda) = self.compliances()?;
        CaseBConfig::new(*h, k0, lambda, *load, self.laws()?)
    }
}

/// One invariant check in the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, passed: value.is_finite() && value < tolerance }
    }

    fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, tolerance: bound, passed: value.is_finite() && value <= bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSummary {
    pub truncation: usize,
    pub coarse_truncation: usize,
    pub max_abs_diff: f64,
    pub max_rel_diff: f64,
}

impl From<ConvergenceReport> for ConvergenceSummary {
    fn from(r: ConvergenceReport) -> Self {
        Self {
            truncation: r.truncation,
            coarse_truncation: r.coarse_truncation,
            max_abs_diff: r.max_abs_diff,
            max_rel_diff: r.max_rel_diff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationSummary {
    pub max_residual: f64,
    pub winding: i64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentSummary {
    /// Predicted exponent, when the case has one.
    pub predicted: Option<f64>,
    pub fitted: f64,
    pub stderr: f64,
    pub window: [f64; 2],
}

/// JSON report of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub kind: ScenarioKind,
    pub numeric: Numeric,
    pub times: Vec<f64>,
    /// Glue compliance `k0` and plate constant `λ`.
    pub k0: f64,
    pub lambda: f64,
    pub convergence: Option<ConvergenceSummary>,
    pub factorization: Option<FactorizationSummary>,
    pub exponent: Option<ExponentSummary>,
    pub max_abs_stress: f64,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

/// CSV files and report produced by [`run_scenario`].
#[derive(Debug, Clone)]
pub struct Bundle {
    /// Columns `x,t,q`.
    pub stress_csv: String,
    /// Columns `m,t,X_m`; finite patch only.
    pub coefficient_csv: Option<String>,
    pub report: Report,
}

impl Bundle {
    pub fn passed(&self) -> bool {
        self.report.passed
    }

    pub fn report_json(&self) -> String {
        serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n"
    }

    /// Writes `stress.csv`, `coefficients.csv` and `report.json` into `dir`.
    pub fn write(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut put = |name: &str, body: &str| -> std::io::Result<()> {
            let path = dir.join(name);
            std::fs::write(&path, body)?;
            written.push(path);
            Ok(())
        };
        put("stress.csv", &self.stress_csv)?;
        if let Some(c) = &self.coefficient_csv {
            put("coefficients.csv", c)?;
        }
        put("report.json", &self.report_json())?;
        Ok(written)
    }
}

fn stress_csv<'a>(rows: impl IntoIterator<Item = (f64, &'a [f64], &'a [f64])>) -> String {
    let mut out = String::from("x,t,q\n");
    for (t, xs, qs) in rows {
        for (x, q) in xs.iter().zip(qs) {
            writeln!(out, "{x},{t},{q}").unwrap();
        }
    }
    out
}

pub fn run_scenario(file: &ScenarioFile) -> Result<Bundle> {
    file.validate()?;
    match file.kind {
        ScenarioKind::SolveFinite => run_finite(file),
        ScenarioKind::CaseA => run_case_a(file),
        ScenarioKind::CaseB => run_case_b(file),
    }
}

fn finish(file: &ScenarioFile, stress_csv: String, coefficient_csv: Option<String>, mut report: Report) -> Bundle {
    report.passed = report.checks.iter().all(|c| c.passed);
    report.numeric = file.numeric.clone();
    report.numeric.x_range = Some(file.x_range());
    if file.kind != ScenarioKind::SolveFinite {
        report.numeric.slope_window = Some(file.slope_window());
    }
    Bundle { stress_csv, coefficient_csv, report }
}

fn empty_report(file: &ScenarioFile, times: Vec<f64>) -> Result<Report> {
    let (k0, lambda) = file.compliances()?;
    Ok(Report {
        kind: file.kind,
        numeric: file.numeric.clone(),
        times,
        k0,
        lambda,
        convergence: None,
        factorization: None,
        exponent: None,
        max_abs_stress: 0.0,
        checks: Vec::new(),
        warnings: Vec::new(),
        passed: false,
    })
}

fn run_finite(file: &ScenarioFile) -> Result<Bundle> {
    let config = file.problem_config()?;
    let n = config.truncation;
    let numeric = &file.numeric;
    let solution = solve_auto(&config, n)?;
    let xs = file.x_grid();
    let field = reconstruct_all(&solution, &config, &xs)?;
    let mut report = empty_report(file, solution.times.clone())?;
    report.warnings = solution.warnings.clone();

    let scale = (0..field.times.len()).map(|i| field.max_abs(i)).fold(0.0, f64::max);
    report.max_abs_stress = scale;
    let relative = |v: f64| if scale > 0.0 { v / scale } else { v };
    let finite = field.values.iter().flatten().all(|v| v.is_finite());
    report.checks.push(Check { name: "stress_finite".into(), value: 0.0, tolerance: 0.0, passed: finite });
    let end = field.end_primitive.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    report.checks.push(Check::below("endpoint_primitive", relative(end), numeric.endpoint_tolerance));
    let eq = field.equilibrium.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    report.checks.push(Check::below("equilibrium", relative(eq), numeric.equilibrium_tolerance));
    let res = solution.residuals.iter().fold(0.0, |m: f64, v| m.max(*v));
    report.checks.push(Check::below("linear_residual", res, numeric.residual_tolerance));
    if n >= 3 {
        let coarse = solve_auto(&config, n - 2)?;
        let conv = compare_solutions(&solution, &coarse);
        report.checks.push(Check::below("convergence", conv.max_rel_diff, numeric.convergence_tolerance));
        report.convergence = Some(conv.into());
    } else {
        report.warnings.push("truncation below 3: convergence check skipped".into());
    }

    let stress = stress_csv(
        field.times.iter().zip(&field.values).map(|(&t, q)| (t, field.xs.as_slice(), q.as_slice())),
    );
    let mut coeffs = String::from("m,t,X_m\n");
    for (t, row) in solution.times.iter().zip(&solution.coefficients) {
        for (k, v) in row.iter().enumerate() {
            writeln!(coeffs, "{},{t},{v}", k + 1).unwrap();
        }
    }
    Ok(finish(file, stress, Some(coeffs), report))
}

fn run_case_a(file: &ScenarioFile) -> Result<Bundle> {
    let config = file.case_a_config()?;
    let numeric = &file.numeric;
    let times = file.time_grid()?;
    let xs = file.x_grid();
    let mut report = empty_report(file, times.clone())?;

    let table = strip_factorization(&config)?;
    report.checks.push(Check::below("factorization_residual", table.max_residual(), numeric.factorization_tolerance));
    report.factorization =
        Some(FactorizationSummary { max_residual: table.max_residual(), winding: table.winding, samples: table.residual.len() });

    let solution = CaseASolution::new(&config)?;
    let mut values = Vec::with_capacity(times.len());
    for &t in &times {
        let st = solution.stress(t, &xs)?;
        let scale = st.values.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
        if scale > 0.0 && st.imaginary > 1e-6 * scale {
            report.warnings.push(format!("t = {t}: inverse transform left an imaginary part {:e}", st.imaginary));
        }
        report.max_abs_stress = report.max_abs_stress.max(scale);
        values.push(st.values);
    }
    let finite = values.iter().flatten().all(|v| v.is_finite());
    report.checks.push(Check { name: "stress_finite".into(), value: 0.0, tolerance: 0.0, passed: finite });

    let window = file.slope_window();
    if report.max_abs_stress > 0.0 {
        let last = values.last().expect("time grid is non-empty");
        let samples: Vec<(f64, f64)> = xs.iter().zip(last).map(|(&x, &v)| (x, v.abs())).collect();
        let fit = slope_fit(&samples, (window[0], window[1]))?;
        report.checks.push(Check::at_most("far_field_slope", fit.slope, numeric.far_slope_bound));
        report.exponent = Some(ExponentSummary { predicted: None, fitted: fit.slope, stderr: fit.stderr, window });
    } else {
        report.warnings.push("stress vanishes: no far-field fit".into());
    }

    let stress = stress_csv(times.iter().zip(&values).map(|(&t, q)| (t, xs.as_slice(), q.as_slice())));
    Ok(finish(file, stress, None, report))
}

fn run_case_b(file: &ScenarioFile) -> Result<Bundle> {
    let config = file.case_b_config()?;
    let numeric = &file.numeric;
    let times = file.time_grid()?;
    let xs = file.x_grid();
    let mut report = empty_report(file, times.clone())?;

    let table = riemann_factorization(&config)?;
    report.checks.push(Check::below("factorization_residual", table.max_residual(), numeric.factorization_tolerance));
    report.factorization =
        Some(FactorizationSummary { max_residual: table.max_residual(), winding: table.winding, samples: table.residual.len() });

    let exponent = case_b_exponent(config.k0h(), config.lambda_h())?;
    if let Some(w) = &exponent.warning {
        report.warnings.push(w.clone());
    }
    let mut values = Vec::with_capacity(times.len());
    let mut worst_balance: f64 = 0.0;
    for &t in &times {
        let sol = CaseBSolution::new(&config, t)?;
        let q: Vec<f64> = xs.iter().map(|&x| sol.stress(x)).collect();
        report.max_abs_stress = q.iter().fold(report.max_abs_stress, |m, v| m.max(v.abs()));
        if config.load != 0.0 {
            worst_balance = worst_balance.max((sol.resultant() - config.load).abs() / config.load.abs());
        }
        values.push(q);
    }
    let finite = values.iter().flatten().all(|v| v.is_finite());
    report.checks.push(Check { name: "stress_finite".into(), value: 0.0, tolerance: 0.0, passed: finite });
    report.checks.push(Check::below("load_balance", worst_balance, numeric.balance_tolerance));

    let window = file.slope_window();
    if config.load != 0.0 {
        let samples: Vec<(f64, f64)> = xs.iter().zip(&values[0]).map(|(&x, &v)| (x, v)).collect();
        let fit = slope_fit(&samples, (window[0], window[1]))?;
        let miss = (fit.slope - exponent.exponent).abs();
        report.checks.push(Check::below("exponent_fit", miss, numeric.exponent_tolerance));
        report.exponent =
            Some(ExponentSummary { predicted: Some(exponent.exponent), fitted: fit.slope, stderr: fit.stderr, window });
    } else {
        report.warnings.push("zero load: no exponent fit".into());
    }

    let stress = stress_csv(times.iter().zip(&values).map(|(&t, q)| (t, xs.as_slice(), q.as_slice())));
    Ok(finish(file, stress, None, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::presets;

    fn finite_file() -> ScenarioFile {
        ScenarioFile {
            kind: ScenarioKind::SolveFinite,
            output: default_output(),
            materials: Materials {
                patch_young: presets::PATCH_YOUNG,
                patch_poisson: presets::PATCH_POISSON,
                plate_young: presets::PLATE_YOUNG,
                plate_poisson: presets::PLATE_POISSON,
                glue_shear: presets::GLUE_SHEAR_SOFT,
                gamma: presets::GAMMA,
                load_instant: presets::LOAD_INSTANT,
                age_shift: [0.0; 3],
                ageing: Ageing { a: 0.09e-10, b: 4.82e-10, c1: Some(0.0098), c2: Some(0.00123) },
            },
            geometry: Geometry {
                glue_thickness: presets::GLUE_THICKNESS,
                stiffness: Stiffness::Uniform { thickness: presets::PATCH_THICKNESS },
            },
            forcing: ForcingSpec::SqrtWeighted { coeffs: vec![presets::AMPLITUDE_LOW] },
            numeric: Numeric { truncation: 6, time_end: Some(145.0), time_steps: 8, x_points: 11, ..Numeric::default() },
        }
    }

    fn case_b_file(k0h: f64) -> ScenarioFile {
        let mut f = finite_file();
        f.kind = ScenarioKind::CaseB;
        f.materials.ageing = Ageing { a: 0.09e-10, b: 4.82e-10, c1: None, c2: None };
        let k0 = f.geometry.glue_thickness / f.materials.glue_shear;
        f.geometry.stiffness = Stiffness::Linear { h: k0h / k0 };
        f.forcing = ForcingSpec::Point { load: 1e4 };
        f.numeric = Numeric { times: Some(vec![45.0, 100.0]), ..Numeric::default() };
        f
    }

    #[test]
    fn round_trip_through_toml() {
        for file in [finite_file(), case_b_file(4.0)] {
            let text = file.to_toml_string().unwrap();
            assert_eq!(ScenarioFile::from_toml_str(&text).unwrap(), file, "{text}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = finite_file().to_toml_string().unwrap();
        let bad = text.replacen("[materials]", "[materials]\npatch_colour = 1.0", 1);
        let err = ScenarioFile::from_toml_str(&bad).unwrap_err();
        assert!(matches!(&err, Error::Config(m) if m.contains("patch_colour")), "{err}");
        let bad = text.replacen("type = \"sqrt-weighted\"", "type = \"sqrt-weighted\"\nshape = 2", 1);
        assert!(ScenarioFile::from_toml_str(&bad).is_err());
    }

    #[test]
    fn field_level_messages() {
        let mut f = finite_file();
        f.materials.glue_shear = -1.0;
        assert!(matches!(f.validate(), Err(Error::Config(m)) if m.contains("materials.glue_shear")));
        let mut f = finite_file();
        f.numeric.times = Some(vec![40.0, 50.0]);
        f.numeric.time_end = None;
        assert!(matches!(f.validate(), Err(Error::Config(m)) if m.contains("load instant")));
        let mut f = finite_file();
        f.forcing = ForcingSpec::Point { load: 1.0 };
        assert!(f.validate().is_err());
    }

    #[test]
    fn zero_forcing_gives_zero_stress() {
        let mut f = finite_file();
        f.forcing = ForcingSpec::SqrtWeighted { coeffs: vec![0.0] };
        let bundle = run_scenario(&f).unwrap();
        for line in bundle.stress_csv.lines().skip(1) {
            let q: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
            assert_eq!(q, 0.0, "{line}");
        }
        assert!(bundle.passed(), "{:?}", bundle.report.checks);
    }

    #[test]
    fn runs_are_byte_identical() {
        let f = finite_file();
        let a = run_scenario(&f).unwrap();
        let b = run_scenario(&f).unwrap();
        assert_eq!(a.stress_csv, b.stress_csv);
        assert_eq!(a.coefficient_csv, b.coefficient_csv);
        assert_eq!(a.report_json(), b.report_json());
        assert_eq!(a.stress_csv.lines().count(), 1 + 9 * 11);
        assert_eq!(a.coefficient_csv.unwrap().lines().count(), 1 + 9 * 6);
    }

    #[test]
    fn case_b_reports_the_square_root_exponent() {
        let bundle = run_scenario(&case_b_file(4.0)).unwrap();
        let e = bundle.report.exponent.clone().unwrap();
        assert!((e.predicted.unwrap() + 0.5).abs() < 1e-9, "{e:?}");
        assert!((e.fitted + 0.5).abs() < 0.05, "{e:?}");
        assert!(bundle.passed(), "{:?}", bundle.report.checks);
    }
}
