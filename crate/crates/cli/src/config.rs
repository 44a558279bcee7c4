//! Run configuration: a single JSON document with every key checked.

use std::path::{Path, PathBuf};

use semidirac::fiber;
use semidirac::lattice::Profile;
use semidirac::quasimode::{BoxTrial, CutoffProfile, WeylTrial};
use semidirac::scan::{Observable, Rung};
use semidirac::{Grid2D, Params, PerturbationProfile, PotentialModel, SolverConfig, SolverMode};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridConfig {
    pub fn build(&self) -> semidirac::Result<Grid2D> {
        Grid2D::new(self.x_min, self.x_max, self.y_max, self.nx, self.ny)
    }

    /// Unknowns of the first-order operator on this grid.
    pub fn dim(&self) -> usize {
        (2 * self.nx * self.ny).saturating_sub(self.nx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: Option<PathBuf>,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: None,
            formats: vec![Format::Csv, Format::Json],
        }
    }
}

impl OutputConfig {
    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

fn coincidence_w() -> PerturbationProfile {
    PerturbationProfile::off_diagonal_real(Profile::Rect {
        x0: -0.5,
        x1: 0.5,
        y0: 0.0,
        y1: 1.0,
        value: -1.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeylConfig {
    /// Targets `mu`; each must satisfy `|mu| >= delta`.
    pub mu: Vec<f64>,
    pub n: Vec<u32>,
    /// Relative slack allowed above the bound.
    pub bound_tol: f64,
}

impl Default for WeylConfig {
    fn default() -> Self {
        WeylConfig {
            mu: vec![],
            n: vec![8, 16, 32, 64],
            bound_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CutoffConfig {
    pub n: Vec<u32>,
    pub profile: CutoffProfile,
    pub quad_order: usize,
}

impl Default for CutoffConfig {
    fn default() -> Self {
        CutoffConfig {
            n: vec![4, 16, 64],
            profile: CutoffProfile::reference(),
            quad_order: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AEpsConfig {
    pub w: PerturbationProfile,
    pub eps: Vec<f64>,
    /// Cutoff indices for the trial-energy sequence.
    pub trial_n: Vec<u32>,
}

impl Default for AEpsConfig {
    fn default() -> Self {
        AEpsConfig {
            w: coincidence_w(),
            eps: vec![0.0, 0.5, 1.0, 1.5, 1.9, 2.1, 3.0],
            trial_n: vec![8, 16, 32, 64],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoxConfig {
    pub a: f64,
    pub b: f64,
    pub v: Vec<f64>,
    pub quad_order: usize,
}

impl Default for BoxConfig {
    fn default() -> Self {
        BoxConfig {
            a: 1.0,
            b: 1.0 + std::f64::consts::PI,
            v: vec![-5.0, -4.0, -3.0, -2.0, 0.0],
            quad_order: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuasimodeConfig {
    pub weyl: WeylConfig,
    pub cutoff: CutoffConfig,
    pub a_eps: AEpsConfig,
    #[serde(rename = "box")]
    pub box_trial: BoxConfig,
}

/// One sweep; the `axis` key selects the kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScanConfig {
    /// Box strength `V0` on `[a, b]^2`.
    BoxStrength {
        a: f64,
        b: f64,
        values: Vec<f64>,
        #[serde(default)]
        fiber_check: bool,
    },
    /// Coupling `eps` of the perturbation `W`.
    Epsilon {
        w: PerturbationProfile,
        values: Vec<f64>,
        #[serde(default)]
        fiber_check: bool,
    },
    /// Refinement ladder over the configured domain.
    Convergence {
        observable: Observable,
        ladder: Vec<Rung>,
        #[serde(default)]
        fiber_check: bool,
    },
    /// Domain sizes `L` for `[-L, L] x [0, L]` at spacing `h`.
    Delocalization {
        h: f64,
        values: Vec<f64>,
        #[serde(default)]
        fiber_check: bool,
    },
}

impl ScanConfig {
    pub fn fiber_check(&self) -> bool {
        match *self {
            ScanConfig::BoxStrength { fiber_check, .. }
            | ScanConfig::Epsilon { fiber_check, .. }
            | ScanConfig::Convergence { fiber_check, .. }
            | ScanConfig::Delocalization { fiber_check, .. } => fiber_check,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FiberConfig {
    pub xi_max: f64,
    pub n_xi: usize,
    pub ny: usize,
    pub y_max: f64,
}

impl Default for FiberConfig {
    fn default() -> Self {
        FiberConfig {
            xi_max: 3.0,
            n_xi: 61,
            ny: 400,
            y_max: 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub potential: PotentialModel,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub quasimode: QuasimodeConfig,
    #[serde(default)]
    pub scan: Option<ScanConfig>,
    #[serde(default)]
    pub fiber: FiberConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn config_err(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {reason}"))
}

fn field<T>(field: &str, r: semidirac::Result<T>) -> CliResult<T> {
    r.map_err(|e| config_err(field, e))
}

fn finite_list(name: &str, v: &[f64]) -> CliResult<()> {
    if v.is_empty() {
        return Err(config_err(name, "must not be empty"));
    }
    if let Some(x) = v.iter().find(|x| !x.is_finite()) {
        return Err(config_err(name, format!("non-finite value {x}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Pretty JSON with every default filled in.
    pub fn canonical(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn params(&self) -> Params {
        Params::new(self.params.delta).expect("validated")
    }

    pub fn grid(&self) -> Grid2D {
        self.grid.build().expect("validated")
    }

    /// `mu` list for the Weyl table: the configured one, or
    /// `+-{delta, delta + 1, delta + 4}`.
    pub fn weyl_mus(&self) -> Vec<f64> {
        if !self.quasimode.weyl.mu.is_empty() {
            return self.quasimode.weyl.mu.clone();
        }
        let d = self.params.delta;
        [d, d + 1.0, d + 4.0].iter().flat_map(|&m| [m, -m]).collect()
    }

    /// Checks every precondition that can be checked without solving.
    pub fn validate(&self) -> CliResult<()> {
        let params = field("params.delta", Params::new(self.params.delta))?;
        let grid = field("grid", self.grid.build())?;
        field("potential", self.potential.on(&grid))?;
        field("solver", self.solver.validate())?;
        if self.solver.mode == SolverMode::Dense && self.grid.dim() > self.solver.dense_cap {
            return Err(config_err(
                "solver.mode",
                format!(
                    "dense mode on dimension {} exceeds dense_cap {}",
                    self.grid.dim(),
                    self.solver.dense_cap
                ),
            ));
        }
        if self.output.formats.is_empty() {
            return Err(config_err("output.formats", "must list at least one format"));
        }
        self.validate_quasimode(&params)?;
        if let Some(scan) = &self.scan {
            self.validate_scan(scan, &grid)?;
        }
        let f = &self.fiber;
        if !(f.xi_max.is_finite() && f.xi_max >= 0.0) {
            return Err(config_err("fiber.xi_max", "must be finite and >= 0"));
        }
        if f.n_xi == 0 {
            return Err(config_err("fiber.n_xi", "must be at least 1"));
        }
        field("fiber", fiber::fiber_operator(0.0, &params, f.ny, f.y_max))?;
        Ok(())
    }

    fn validate_quasimode(&self, params: &Params) -> CliResult<()> {
        let q = &self.quasimode;
        if q.weyl.n.is_empty() || q.weyl.n.contains(&0) {
            return Err(config_err("quasimode.weyl.n", "need positive indices"));
        }
        if !(q.weyl.bound_tol.is_finite() && q.weyl.bound_tol >= 0.0) {
            return Err(config_err("quasimode.weyl.bound_tol", "must be finite and >= 0"));
        }
        for &mu in &self.weyl_mus() {
            field("quasimode.weyl.mu", WeylTrial::for_mu(1, mu, params))?;
        }
        if q.cutoff.n.is_empty() || q.cutoff.n.iter().any(|&n| n < 2) {
            return Err(config_err("quasimode.cutoff.n", "need indices >= 2"));
        }
        field("quasimode.cutoff.profile", q.cutoff.profile.validate())?;
        if q.cutoff.quad_order == 0 {
            return Err(config_err("quasimode.cutoff.quad_order", "must be positive"));
        }
        q.a_eps.w.validate().map_err(|r| config_err("quasimode.a_eps.w", r))?;
        if q.a_eps.w.support().is_none() {
            return Err(config_err(
                "quasimode.a_eps.w",
                "perturbation must have bounded support",
            ));
        }
        finite_list("quasimode.a_eps.eps", &q.a_eps.eps)?;
        if q.a_eps.trial_n.iter().any(|&n| n < 2) {
            return Err(config_err("quasimode.a_eps.trial_n", "need indices >= 2"));
        }
        field("quasimode.box", BoxTrial::new(q.box_trial.a, q.box_trial.b))?;
        finite_list("quasimode.box.v", &q.box_trial.v)?;
        if q.box_trial.quad_order == 0 {
            return Err(config_err("quasimode.box.quad_order", "must be positive"));
        }
        Ok(())
    }

    fn validate_scan(&self, scan: &ScanConfig, grid: &Grid2D) -> CliResult<()> {
        match scan {
            ScanConfig::BoxStrength { a, b, values, .. } => {
                field("scan", BoxTrial::new(*a, *b))?;
                finite_list("scan.values", values)?;
                let m = 3.0 * (b - a);
                if !grid.contains_rect(a - m, b + m, 0.0, b + m) {
                    return Err(config_err(
                        "scan",
                        format!("box [{a}, {b}]^2 needs a margin of {m} inside the grid"),
                    ));
                }
            }
            ScanConfig::Epsilon { w, values, .. } => {
                w.validate().map_err(|r| config_err("scan.w", r))?;
                let [x0, x1, y0, y1] = w
                    .support()
                    .ok_or_else(|| config_err("scan.w", "perturbation must have bounded support"))?;
                if !grid.contains_rect(x0, x1, y0, y1) {
                    return Err(config_err("scan.w", "support extends beyond the grid"));
                }
                finite_list("scan.values", values)?;
            }
            ScanConfig::Convergence { ladder, .. } => {
                if ladder.len() < 3 {
                    return Err(config_err("scan.ladder", "need at least 3 rungs"));
                }
                if !ladder.windows(2).all(|w| w[1].nx > w[0].nx && w[1].ny > w[0].ny) {
                    return Err(config_err("scan.ladder", "rungs must increase strictly in nx and ny"));
                }
                for r in ladder {
                    let g = field("scan.ladder", grid.with_nodes(r.nx, r.ny))?;
                    field("scan.ladder", self.potential.on(&g))?;
                }
            }
            ScanConfig::Delocalization { h, values, .. } => {
                if !(h.is_finite() && *h > 0.0) {
                    return Err(config_err("scan.h", "must be finite and > 0"));
                }
                finite_list("scan.values", values)?;
                if values.len() < 2 || !values.windows(2).all(|w| w[1] > w[0]) || values[0] <= 0.0 {
                    return Err(config_err(
                        "scan.values",
                        "need at least two positive, strictly increasing sizes",
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"params": {"delta": 1.0},
        "grid": {"x_min": -5, "x_max": 5, "y_max": 5, "nx": 11, "ny": 6}}"#;

    #[test]
    fn minimal_config_fills_defaults() {
        let c = RunConfig::parse(MINIMAL).unwrap();
        assert_eq!(c.solver.mode, SolverMode::Gap);
        assert_eq!(c.potential, PotentialModel::None);
        assert_eq!(c.weyl_mus(), vec![1.0, -1.0, 2.0, -2.0, 5.0, -5.0]);
    }

    #[test]
    fn canonical_round_trip() {
        let c = RunConfig::parse(MINIMAL).unwrap();
        let s = c.canonical();
        let c2 = RunConfig::parse(&s).unwrap();
        assert_eq!(c, c2);
        assert_eq!(s, c2.canonical());
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = MINIMAL.replace("\"delta\": 1.0", "\"delta\": 1.0, \"gamma\": 2");
        assert!(matches!(RunConfig::parse(&bad), Err(CliError::Config(_))));
    }

    #[test]
    fn field_level_messages() {
        let bad = MINIMAL.replace("\"nx\": 11", "\"nx\": 2");
        let e = RunConfig::parse(&bad).unwrap_err().to_string();
        assert!(e.contains("grid"), "{e}");
        let bad = MINIMAL.replace("}}", "}, \"solver\": {\"mode\": \"dense\", \"dense_cap\": 10}}");
        let e = RunConfig::parse(&bad).unwrap_err().to_string();
        assert!(e.contains("dense_cap"), "{e}");
    }
}
