//! Parameter sweeps that set analytic predictions against eigensolver
//! observations.
//!
//! Predictions are pure functions of the parameters and are computed
//! before any operator is assembled. The existence results behind them
//! are sufficient conditions, so only the predicted direction is asserted:
//! a predicted bound state must be observed, while an unpredicted one is
//! merely recorded.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assembly::{assemble_operator, assemble_square_form};
use crate::eigensolve::{
    band_permutation, dense_eigs, gap_eigs, interval_count, lowest_of_square, min_abs_in_band, slope, Certificate,
    DenseOptions, EigenEntry, GapBackend, GapOptions, PreconditionerKind, SpectrumReport, SquareOptions,
    DEFAULT_DENSE_CAP,
};
use crate::error::{Error, Result};
use crate::lattice::{Grid2D, Params, PerturbationProfile, PotentialModel};
use crate::quasimode::{a_eps_derived, a_eps_paper, boundstate_window, box_energy_analytic};

/// Gap eigenvalues are counted in `(-0.95 delta, 0.95 delta)`.
pub const DETECTION_FRACTION: f64 = 0.95;
/// Participation ratio below which a state counts as localized.
pub const LOCALIZED_PR: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMode {
    Dense,
    Gap,
    SquareForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub mode: SolverMode,
    /// Search interval for the spectrum command; the detection window when absent.
    pub interval: Option<[f64; 2]>,
    pub k: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub backend: GapBackend,
    pub dense_cap: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: SolverMode::Gap,
            interval: None,
            k: 8,
            tol: 1e-9,
            max_iter: 300,
            backend: GapBackend::Factorization,
            dense_cap: DEFAULT_DENSE_CAP,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("solver.k", "must be at least 1"));
        }
        if !(self.tol.is_finite() && self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::invalid(
                "solver.tol",
                format!("must lie in (0, 1), got {}", self.tol),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::invalid("solver.max_iter", "must be at least 1"));
        }
        if let Some([lo, hi]) = self.interval {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::invalid(
                    "solver.interval",
                    format!("need lo < hi, got [{lo}, {hi}]"),
                ));
            }
        }
        Ok(())
    }

    pub fn gap_options(&self) -> GapOptions {
        GapOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            backend: self.backend,
            seed: self.seed,
            ..GapOptions::default()
        }
    }

    pub fn square_options(&self) -> SquareOptions {
        SquareOptions {
            tol: self.tol.max(1e-10),
            max_iter: self.max_iter,
            preconditioner: PreconditionerKind::BandedCholesky,
            seed: self.seed,
            ..SquareOptions::default()
        }
    }

    fn dense_options(&self, window: Option<(f64, f64)>) -> DenseOptions {
        DenseOptions {
            cap: self.dense_cap,
            keep_vectors: false,
            window,
        }
    }
}

pub fn detection_window(params: &Params) -> (f64, f64) {
    let d = DETECTION_FRACTION * params.delta();
    (-d, d)
}

/// Spectrum of the operator selected by `cfg.mode`: the full spectrum,
/// the eigenvalues in the search interval, or the lowest eigenvalues of
/// the square form.
pub fn solve_spectrum(
    grid: &Grid2D,
    params: &Params,
    model: &PotentialModel,
    cfg: &SolverConfig,
) -> Result<SpectrumReport> {
    cfg.validate()?;
    let pot = model.on(grid)?;
    match cfg.mode {
        SolverMode::Dense => dense_eigs(
            &assemble_operator(grid, params, &pot)?,
            &cfg.dense_options(cfg.interval.map(|[a, b]| (a, b))),
        ),
        SolverMode::Gap => {
            let (lo, hi) = cfg
                .interval
                .map(|[a, b]| (a, b))
                .unwrap_or_else(|| detection_window(params));
            gap_eigs(
                &assemble_operator(grid, params, &pot)?,
                lo,
                hi,
                cfg.k,
                &cfg.gap_options(),
            )
        }
        SolverMode::SquareForm => {
            lowest_of_square(&assemble_square_form(grid, params, &pot)?, cfg.k, &cfg.square_options())
        }
    }
}

/// Gap eigenvalues seen by the solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    /// Eigenvalues in the detection window; exact when `certified`.
    pub count: usize,
    pub certified: bool,
    /// Eigenpairs found in the window, eigenvalues as `lambda` (square-form
    /// values are reported as `sqrt`).
    pub entries: Vec<EigenEntry>,
}

impl Observation {
    pub fn min_abs_lambda(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.eigenvalue.abs()).min_by(f64::total_cmp)
    }

    pub fn min_participation(&self) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.participation_ratio)
            .min_by(f64::total_cmp)
    }

    /// Some eigenvector in the window is both concentrated and decaying in `y`.
    pub fn localized(&self) -> bool {
        self.entries.iter().any(is_localized)
    }
}

pub fn is_localized(e: &EigenEntry) -> bool {
    e.participation_ratio < LOCALIZED_PR && e.y_decay_rate.is_some_and(|d| d < 0.0)
}

/// Eigenvalues of the perturbed operator inside the detection window.
pub fn observe(grid: &Grid2D, params: &Params, model: &PotentialModel, cfg: &SolverConfig) -> Result<Observation> {
    let (lo, hi) = detection_window(params);
    let pot = model.on(grid)?;
    match cfg.mode {
        SolverMode::Dense => {
            let rep = dense_eigs(
                &assemble_operator(grid, params, &pot)?,
                &cfg.dense_options(Some((lo, hi))),
            )?;
            let entries = rep.entries;
            Ok(Observation {
                count: entries.len(),
                certified: true,
                entries,
            })
        }
        SolverMode::Gap => {
            let rep = gap_eigs(
                &assemble_operator(grid, params, &pot)?,
                lo,
                hi,
                cfg.k,
                &cfg.gap_options(),
            )?;
            let (count, certified) = match rep.solver.certificate {
                Certificate::Inertia { count } => (count, true),
                _ => (rep.len(), false),
            };
            Ok(Observation {
                count,
                certified,
                entries: rep.entries,
            })
        }
        SolverMode::SquareForm => {
            let rep = lowest_of_square(&assemble_square_form(grid, params, &pot)?, cfg.k, &cfg.square_options())?;
            let entries: Vec<EigenEntry> = rep
                .entries
                .into_iter()
                .filter(|e| e.eigenvalue < hi * hi)
                .map(|mut e| {
                    e.eigenvalue = e.eigenvalue.max(0.0).sqrt();
                    e
                })
                .collect();
            Ok(Observation {
                count: entries.len(),
                certified: false,
                entries,
            })
        }
    }
}

/// What the analytic criterion says about the gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// A gap eigenvalue must exist.
    Present,
    /// The gap must be free of spectrum.
    Absent,
    /// The criterion is silent.
    Unasserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub axis_value: f64,
    pub expectation: Expectation,
    /// Box trial energy `q(V0)` or the re-derived `A_eps`.
    pub criterion: f64,
    /// Literal `A_eps` integrand, for perturbation sweeps.
    pub paper_criterion: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub axis_value: f64,
    pub expectation: Expectation,
    pub criterion: f64,
    pub observed_count: usize,
    pub certified: bool,
    pub min_abs_lambda: Option<f64>,
    pub min_participation: Option<f64>,
    pub localized: bool,
    /// `None` where nothing is asserted.
    pub agreement: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub axis: String,
    pub delta: f64,
    pub grids: Vec<Grid2D>,
    pub predictions: Vec<Prediction>,
    pub points: Vec<ScanPoint>,
}

impl ScanResult {
    /// Every asserted point agrees.
    pub fn all_asserted_agree(&self) -> bool {
        self.points.iter().all(|p| p.agreement != Some(false))
    }

    pub fn asserted_count(&self) -> usize {
        self.points.iter().filter(|p| p.agreement.is_some()).count()
    }

    /// Participation ratios never drop by more than `noise` (relative)
    /// from one point to the next.
    pub fn participation_non_decreasing(&self, noise: f64) -> bool {
        let pr: Vec<f64> = self.points.iter().filter_map(|p| p.min_participation).collect();
        pr.len() == self.points.len() && pr.windows(2).all(|w| w[1] >= (1.0 - noise) * w[0])
    }
}

fn point(pred: &Prediction, obs: &Observation) -> ScanPoint {
    let agreement = match pred.expectation {
        Expectation::Present => Some(obs.localized()),
        Expectation::Absent => Some(obs.count == 0),
        Expectation::Unasserted => None,
    };
    ScanPoint {
        axis_value: pred.axis_value,
        expectation: pred.expectation,
        criterion: pred.criterion,
        observed_count: obs.count,
        certified: obs.certified,
        min_abs_lambda: obs.min_abs_lambda(),
        min_participation: obs.min_participation(),
        localized: obs.localized(),
        agreement,
    }
}

fn finite_axis(name: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(name, "sweep values must be finite and non-empty"));
    }
    Ok(())
}

/// Predictions for a box potential of strength `V0` on `[a, b]^2`:
/// present inside the window of negative trial energy, absent for `V0 >= 0`.
pub fn predict_potential(params: &Params, a: f64, b: f64, values: &[f64]) -> Result<Vec<Prediction>> {
    finite_axis("scan.values", values)?;
    let window = boundstate_window(params, a, b)?;
    values
        .iter()
        .map(|&v| {
            let expectation = match window {
                Some((v1, v2)) if v > v1 && v < v2 => Expectation::Present,
                _ if v >= 0.0 => Expectation::Absent,
                _ => Expectation::Unasserted,
            };
            Ok(Prediction {
                axis_value: v,
                expectation,
                criterion: box_energy_analytic(a, b, v, params)?,
                paper_criterion: None,
            })
        })
        .collect()
}

/// Predictions for `T + eps W`: present where `A_eps < 0`, absent at `eps = 0`.
pub fn predict_perturbation(params: &Params, w: &PerturbationProfile, eps: &[f64]) -> Result<Vec<Prediction>> {
    finite_axis("scan.values", eps)?;
    eps.iter()
        .map(|&e| {
            let derived = a_eps_derived(w, e, params)?;
            let expectation = if e == 0.0 {
                Expectation::Absent
            } else if derived < 0.0 {
                Expectation::Present
            } else {
                Expectation::Unasserted
            };
            Ok(Prediction {
                axis_value: e,
                expectation,
                criterion: derived,
                paper_criterion: Some(a_eps_paper(w, e, params)?),
            })
        })
        .collect()
}

/// Sweep of the box strength. The grid must hold the box with a margin of
/// three box widths to the left, right and top.
pub fn scan_potential(
    params: &Params,
    grid: &Grid2D,
    a: f64,
    b: f64,
    values: &[f64],
    cfg: &SolverConfig,
) -> Result<ScanResult> {
    cfg.validate()?;
    let predictions = predict_potential(params, a, b, values)?;
    let m = 3.0 * (b - a);
    if !grid.contains_rect(a - m, b + m, 0.0, b + m) {
        return Err(Error::invalid(
            "grid",
            format!("box [{a}, {b}]^2 needs a margin of {m} inside the domain"),
        ));
    }
    let points = predictions
        .par_iter()
        .map(|p| {
            let model = PotentialModel::Box {
                a,
                b,
                value: p.axis_value,
            };
            observe(grid, params, &model, cfg).map(|o| point(p, &o))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        axis: "V0".into(),
        delta: params.delta(),
        grids: vec![grid.clone()],
        predictions,
        points,
    })
}

/// Sweep of the coupling `eps` in `T + eps W`.
pub fn scan_perturbation(
    params: &Params,
    grid: &Grid2D,
    w: &PerturbationProfile,
    eps: &[f64],
    cfg: &SolverConfig,
) -> Result<ScanResult> {
    cfg.validate()?;
    let predictions = predict_perturbation(params, w, eps)?;
    let [x0, x1, y0, y1] = w
        .support()
        .ok_or_else(|| Error::invalid("w", "perturbation must have bounded support"))?;
    if !grid.contains_rect(x0, x1, y0, y1) {
        return Err(Error::invalid("grid", "support of W extends beyond the domain"));
    }
    let points = predictions
        .par_iter()
        .map(|p| {
            let model = PotentialModel::Perturbation {
                w: w.clone(),
                epsilon: p.axis_value,
            };
            observe(grid, params, &model, cfg).map(|o| point(p, &o))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        axis: "epsilon".into(),
        delta: params.delta(),
        grids: vec![grid.clone()],
        predictions,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Observable {
    /// Smallest `|lambda|` at or above the detection window.
    GapEdge,
    /// Smallest `|lambda|` inside the detection window.
    BoundStateLambda,
    /// Lowest eigenvalue of the square form.
    SquareFormMin,
}

/// Node counts of one refinement level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rung {
    pub nx: usize,
    pub ny: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub observable: Observable,
    pub rungs: Vec<Rung>,
    pub values: Vec<f64>,
    /// Least-squares slope of `ln |v_{i+1} - v_i|` against `ln hx_i`; `None`
    /// when successive values coincide.
    pub fitted_order: Option<f64>,
}

fn measure(
    grid: &Grid2D,
    params: &Params,
    model: &PotentialModel,
    observable: Observable,
    cfg: &SolverConfig,
) -> Result<f64> {
    let d = params.delta();
    let pot = model.on(grid)?;
    let opts = cfg.gap_options();
    let missing =
        |what: &str| Error::Precondition(format!("no eigenvalue found for {what} on {}x{}", grid.nx(), grid.ny()));
    match observable {
        Observable::GapEdge => {
            let op = assemble_operator(grid, params, &pot)?;
            min_abs_in_band(&op, DETECTION_FRACTION * d, 4.0 * d, &opts)?
                .map(|e| e.eigenvalue.abs())
                .ok_or_else(|| missing("gap-edge"))
        }
        Observable::BoundStateLambda => {
            let op = assemble_operator(grid, params, &pot)?;
            min_abs_in_band(&op, 0.0, DETECTION_FRACTION * d, &opts)?
                .map(|e| e.eigenvalue.abs())
                .ok_or_else(|| missing("bound-state-lambda"))
        }
        Observable::SquareFormMin => {
            let q = assemble_square_form(grid, params, &pot)?;
            let rep = lowest_of_square(&q, 1, &cfg.square_options())?;
            rep.entries
                .first()
                .map(|e| e.eigenvalue)
                .ok_or_else(|| missing("square-form-min"))
        }
    }
}

/// The observable on each rung of a refinement ladder over the extents of
/// `domain`, with a fitted convergence order.
pub fn convergence_study(
    params: &Params,
    domain: &Grid2D,
    model: &PotentialModel,
    observable: Observable,
    ladder: &[Rung],
    cfg: &SolverConfig,
) -> Result<ConvergenceStudy> {
    cfg.validate()?;
    if ladder.len() < 3 {
        return Err(Error::invalid(
            "ladder",
            format!("need at least 3 rungs, got {}", ladder.len()),
        ));
    }
    if !ladder.windows(2).all(|w| w[1].nx > w[0].nx && w[1].ny > w[0].ny) {
        return Err(Error::invalid(
            "ladder",
            "rungs must increase strictly in both nx and ny",
        ));
    }
    let grids = ladder
        .iter()
        .map(|r| domain.with_nodes(r.nx, r.ny))
        .collect::<Result<Vec<_>>>()?;
    let values = grids
        .par_iter()
        .map(|g| measure(g, params, model, observable, cfg))
        .collect::<Result<Vec<_>>>()?;
    let diffs: Vec<(f64, f64)> = values
        .windows(2)
        .zip(&grids)
        .map(|(v, g)| (g.hx().ln(), (v[1] - v[0]).abs()))
        .collect();
    let fitted_order = diffs
        .iter()
        .all(|d| d.1 > 0.0)
        .then(|| slope(&diffs.iter().map(|&(h, d)| (h, d.ln())).collect::<Vec<_>>()));
    Ok(ConvergenceStudy {
        observable,
        rungs: ladder.to_vec(),
        values,
        fitted_order,
    })
}

/// Localization of the smallest-`|lambda|` eigenvector on the domains
/// `[-L, L] x [0, L]` at fixed spacing `h`. For the free operator it
/// expects no localized state at any size.
pub fn delocalization_probe(
    params: &Params,
    h: f64,
    sizes: &[f64],
    model: &PotentialModel,
    cfg: &SolverConfig,
) -> Result<ScanResult> {
    cfg.validate()?;
    if sizes.len() < 2 {
        return Err(Error::invalid("sizes", "need at least two domain sizes"));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::invalid("h", format!("spacing must be > 0, got {h}")));
    }
    if sizes.iter().any(|l| !(l.is_finite() && *l > 0.0)) || !sizes.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::invalid(
            "sizes",
            "domain sizes must be positive and strictly increasing",
        ));
    }
    let grids = sizes
        .iter()
        .map(|&l| {
            let nx = (2.0 * l / h).round() as usize + 1;
            let ny = (l / h).round() as usize + 1;
            Grid2D::new(-l, l, l, nx, ny)
        })
        .collect::<Result<Vec<_>>>()?;
    let expectation = if model.is_zero() {
        Expectation::Absent
    } else {
        Expectation::Unasserted
    };
    let predictions: Vec<Prediction> = sizes
        .iter()
        .map(|&l| Prediction {
            axis_value: l,
            expectation,
            criterion: 0.0,
            paper_criterion: None,
        })
        .collect();
    let (lo, hi) = detection_window(params);
    let d = params.delta();
    let points = grids
        .par_iter()
        .zip(&predictions)
        .map(|(g, p)| {
            let op = assemble_operator(g, params, &model.on(g)?)?;
            let count = match interval_count(op.matrix(), band_permutation(&op).as_ref(), lo, hi)? {
                Certificate::Inertia { count } => Some(count),
                _ => None,
            };
            let e = min_abs_in_band(&op, 0.0, 4.0 * d, &cfg.gap_options())?
                .ok_or_else(|| Error::Precondition(format!("no eigenvalue with |lambda| <= {}", 4.0 * d)))?;
            let obs = Observation {
                count: count.unwrap_or(usize::from(e.eigenvalue.abs() < hi)),
                certified: count.is_some(),
                entries: vec![e],
            };
            let mut pt = point(p, &obs);
            if p.expectation == Expectation::Absent {
                pt.agreement = Some(!obs.localized() && obs.count == 0);
            }
            Ok(pt)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        axis: "domain_size".into(),
        delta: d,
        grids,
        predictions,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Profile;
    use std::f64::consts::PI;

    #[test]
    fn potential_predictions() {
        let p = Params::new(2.0).unwrap();
        let pr = predict_potential(&p, 1.0, 1.0 + PI, &[-5.0, -3.0, -1.0, 0.0, 0.5]).unwrap();
        let e: Vec<_> = pr.iter().map(|p| p.expectation).collect();
        assert_eq!(
            e,
            vec![
                Expectation::Unasserted,
                Expectation::Present,
                Expectation::Unasserted,
                Expectation::Absent,
                Expectation::Absent
            ]
        );
        assert!((pr[1].criterion + 6.0).abs() < 1e-12);
        assert!(predict_potential(&p, 1.0, 2.0, &[f64::NAN]).is_err());
    }

    #[test]
    fn perturbation_predictions() {
        let p = Params::new(1.0).unwrap();
        let w = PerturbationProfile::off_diagonal_real(Profile::Rect {
            x0: -0.5,
            x1: 0.5,
            y0: 0.0,
            y1: 1.0,
            value: -1.0,
        });
        let pr = predict_perturbation(&p, &w, &[0.0, 1.0, 3.0]).unwrap();
        assert_eq!(pr[0].expectation, Expectation::Absent);
        assert_eq!(pr[1].expectation, Expectation::Present);
        assert_eq!(pr[2].expectation, Expectation::Unasserted);
        assert_eq!(pr[1].criterion, pr[1].paper_criterion.unwrap());
    }

    #[test]
    fn box_scan_on_coarse_grid() {
        let p = Params::new(2.0).unwrap();
        let (a, b) = (1.0, 1.0 + PI);
        let c = 0.5 * (a + b);
        let g = Grid2D::new(c - 11.0, c + 11.0, 14.0, 45, 29).unwrap();
        let cfg = SolverConfig::default();
        let r = scan_potential(&p, &g, a, b, &[-3.0, 0.0], &cfg).unwrap();
        assert_eq!(r.points.len(), 2);
        assert_eq!(r.points[1].agreement, Some(true));
        assert_eq!(r.points[1].observed_count, 0);
        assert!(r.points[0].observed_count > 0);
        let dense = scan_potential(
            &p,
            &g,
            a,
            b,
            &[-3.0],
            &SolverConfig {
                mode: SolverMode::Dense,
                ..cfg.clone()
            },
        )
        .unwrap();
        assert_eq!(dense.points[0].observed_count, r.points[0].observed_count);
        let small = Grid2D::new(0.0, 5.0, 5.0, 11, 11).unwrap();
        assert!(scan_potential(&p, &small, a, b, &[-3.0], &cfg).is_err());
    }

    #[test]
    fn ladder_rules() {
        let p = Params::new(1.0).unwrap();
        let g = Grid2D::new(-5.0, 5.0, 5.0, 11, 6).unwrap();
        let cfg = SolverConfig::default();
        let two = [Rung { nx: 11, ny: 6 }, Rung { nx: 21, ny: 11 }];
        assert!(convergence_study(&p, &g, &PotentialModel::None, Observable::GapEdge, &two, &cfg).is_err());
        let flat = [Rung { nx: 11, ny: 6 }, Rung { nx: 11, ny: 6 }, Rung { nx: 21, ny: 11 }];
        assert!(convergence_study(&p, &g, &PotentialModel::None, Observable::GapEdge, &flat, &cfg).is_err());
        assert!(delocalization_probe(&p, 0.5, &[5.0], &PotentialModel::None, &cfg).is_err());
    }

    #[test]
    fn solver_config_serde() {
        let c: SolverConfig = serde_json::from_str(r#"{"mode":"square-form","k":3}"#).unwrap();
        assert_eq!(c.mode, SolverMode::SquareForm);
        assert_eq!(c.tol, 1e-9);
        assert!(serde_json::from_str::<SolverConfig>(r#"{"mode":"gap","bogus":1}"#).is_err());
        assert!(SolverConfig { k: 0, ..c }.validate().is_err());
    }
}
