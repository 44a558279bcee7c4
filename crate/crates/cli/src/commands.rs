//! Subcommand drivers. Each returns a bundle; nothing here writes files
//! except the scan predictions, which are persisted before any solve.

use std::fs;
use std::path::Path;

use semidirac::assembly::{assemble_operator, assemble_square_form, export_matrix_market};
use semidirac::eigensolve::min_abs_in_band;
use semidirac::fiber::{fiber_scan, matched_union_min_abs, union_edge, xi_grid};
use semidirac::quasimode::{
    a_eps_derived, a_eps_report, boundstate_window, box_energy_analytic, box_energy_numeric,
    cutoff_derivative_integrals, eps_threshold, square_identity, threshold_limits, trial_energy, weyl_series, Branch,
    SquareTrial,
};
use semidirac::scan::{
    convergence_study, delocalization_probe, detection_window, predict_perturbation, predict_potential,
    scan_perturbation, scan_potential, solve_spectrum, Expectation, Prediction,
};
use semidirac::{Certificate, PotentialModel, ScanResult, SolverMode};
use serde::Serialize;

use crate::config::{RunConfig, ScanConfig};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_bool, fmt_f64, fmt_opt, ResultBundle, Table};

/// Weyl slopes must fall in this band.
pub const WEYL_SLOPE_RANGE: (f64, f64) = (-1.05, -0.95);
/// Relative tolerance for the first-derivative cutoff identity.
pub const CUTOFF_IDENTITY_TOL: f64 = 1e-4;
pub const BOX_MATCH_TOL: f64 = 1e-8;
pub const SQUARE_IDENTITY_TOL: f64 = 1e-6;
/// Relative agreement of 2D and fiber-union gap edges.
pub const FIBER_MATCH_TOL: f64 = 0.05;

fn potential_nonnegative(m: &PotentialModel) -> bool {
    match m {
        PotentialModel::None => true,
        PotentialModel::Box { value, .. } => *value >= 0.0,
        PotentialModel::XOnly { profile } => profile.is_nonnegative(),
        PotentialModel::Perturbation { .. } => m.is_zero(),
    }
}

pub fn spectrum(cfg: &RunConfig, seed: u64) -> CliResult<ResultBundle> {
    let params = cfg.params();
    let grid = cfg.grid();
    let report = solve_spectrum(&grid, &params, &cfg.potential, &cfg.solver)?;
    let mut b = ResultBundle::new("spectrum", cfg, seed);
    let mut t = Table::new(
        "eigenvalues",
        &["index", "lambda", "residual", "participation_ratio", "y_decay_rate"],
    );
    for (i, e) in report.entries.iter().enumerate() {
        t.push(vec![
            i.to_string(),
            fmt_f64(e.eigenvalue),
            fmt_f64(e.residual),
            fmt_f64(e.participation_ratio),
            fmt_opt(e.y_decay_rate),
        ]);
    }
    b.tables.push(t);
    if cfg.solver.mode != SolverMode::SquareForm {
        b.check("certified", report.solver.certificate != Certificate::Uncertified);
    }
    if potential_nonnegative(&cfg.potential) {
        let d = params.delta();
        match cfg.solver.mode {
            SolverMode::SquareForm => {
                let min = report.entries.first().map_or(f64::NAN, |e| e.eigenvalue);
                b.check("square_form_above_delta_sq", min >= d * d - 0.05);
            }
            SolverMode::Dense | SolverMode::Gap => {
                let (lo, hi) = detection_window(&params);
                let found = report.in_interval(lo, hi).count();
                let certified_empty = match report.solver.certificate {
                    Certificate::Inertia { count } if cfg.solver.interval.is_none() => count == 0,
                    _ => true,
                };
                b.check("gap_empty", found == 0 && certified_empty);
            }
        }
    }
    b.payload("spectrum", &report)?;
    Ok(b)
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
    }
}

pub fn quasimode(cfg: &RunConfig, seed: u64) -> CliResult<ResultBundle> {
    let params = cfg.params();
    let q = &cfg.quasimode;
    let mut b = ResultBundle::new("quasimode", cfg, seed);

    let series = weyl_series(&params, &cfg.weyl_mus(), &q.weyl.n)?;
    let mut weyl = Table::new("weyl", &["n", "k", "mu", "branch", "residual", "bound_rhs"]);
    let mut slopes = Table::new("weyl_slope", &["mu", "slope", "within_bound"]);
    for s in &series {
        for r in &s.rows {
            weyl.push(vec![
                r.n.to_string(),
                fmt_f64(r.k),
                fmt_f64(r.mu),
                branch_name(r.branch).into(),
                fmt_f64(r.residual),
                fmt_f64(r.bound_rhs),
            ]);
        }
        slopes.push(vec![
            fmt_f64(s.mu),
            fmt_f64(s.slope),
            s.within_bound(q.weyl.bound_tol).to_string(),
        ]);
    }
    let (lo, hi) = WEYL_SLOPE_RANGE;
    b.check(
        "weyl_slope_in_range",
        series.iter().all(|s| s.slope >= lo && s.slope <= hi),
    );
    b.check(
        "weyl_within_bound",
        series.iter().all(|s| s.within_bound(q.weyl.bound_tol)),
    );
    b.tables.extend([weyl, slopes]);

    let mut cut = Table::new(
        "cutoff",
        &[
            "n",
            "Ix",
            "Iy",
            "Ixx",
            "first_deriv_identity_rel_err",
            "second_deriv_bound_slack",
        ],
    );
    let ints = q
        .cutoff
        .n
        .iter()
        .map(|&n| cutoff_derivative_integrals(n, &q.cutoff.profile, q.cutoff.quad_order))
        .collect::<semidirac::Result<Vec<_>>>()?;
    for c in &ints {
        cut.push(vec![
            c.n.to_string(),
            fmt_f64(c.ix),
            fmt_f64(c.iy),
            fmt_f64(c.ixx),
            fmt_f64(c.first_deriv_identity_rel_err()),
            fmt_f64(c.second_deriv_bound_slack()),
        ]);
    }
    b.check(
        "cutoff_first_identity",
        ints.iter()
            .all(|c| c.first_deriv_identity_rel_err() <= CUTOFF_IDENTITY_TOL),
    );
    b.check(
        "cutoff_second_bound",
        ints.iter().all(|c| c.second_deriv_bound_slack() > 0.0),
    );
    b.tables.push(cut);

    let w = &q.a_eps.w;
    let mut aeps = Table::new("a_eps", &["eps", "a_eps_paper", "a_eps_derived", "divergent"]);
    for &e in &q.a_eps.eps {
        let r = a_eps_report(w, e, &params)?;
        aeps.push(vec![
            fmt_f64(r.eps),
            fmt_f64(r.paper),
            fmt_f64(r.derived),
            r.divergent.to_string(),
        ]);
    }
    b.tables.push(aeps);
    match eps_threshold(w, &params) {
        Ok(eps_star) => {
            b.payload("eps_threshold", &eps_star)?;
            let limits = threshold_limits(w)?;
            b.check("threshold_limits", limits.consistent);
            b.payload("threshold_limits", &limits)?;
            if !q.a_eps.trial_n.is_empty() {
                let eps = 0.5 * eps_star;
                let limit = a_eps_derived(w, eps, &params)?;
                let mut te = Table::new("trial_energy", &["n", "eps", "trial_energy", "a_eps_derived", "gap"]);
                let mut gaps = Vec::new();
                for &n in &q.a_eps.trial_n {
                    let e = trial_energy(w, eps, &params, n, &q.cutoff.profile, q.cutoff.quad_order)?;
                    gaps.push(e - limit);
                    te.push(vec![
                        n.to_string(),
                        fmt_f64(eps),
                        fmt_f64(e),
                        fmt_f64(limit),
                        fmt_f64(e - limit),
                    ]);
                }
                b.check(
                    "trial_energy_decreasing",
                    gaps.windows(2).all(|g| g[1] < g[0]) && gaps.iter().all(|&g| g >= 0.0),
                );
                b.tables.push(te);
            }
        }
        Err(semidirac::Error::Precondition(_)) => {}
        Err(e) => return Err(e.into()),
    }

    let bx = &q.box_trial;
    let mut bt = Table::new("box", &["v0", "analytic", "numeric", "abs_diff", "in_window"]);
    let window = boundstate_window(&params, bx.a, bx.b)?;
    let mut box_ok = true;
    for &v in &bx.v {
        let a = box_energy_analytic(bx.a, bx.b, v, &params)?;
        let n = box_energy_numeric(bx.a, bx.b, v, &params, bx.quad_order)?;
        let inside = window.is_some_and(|(v1, v2)| v > v1 && v < v2);
        box_ok &= (a - n).abs() <= BOX_MATCH_TOL;
        bt.push(vec![
            fmt_f64(v),
            fmt_f64(a),
            fmt_f64(n),
            fmt_f64((a - n).abs()),
            inside.to_string(),
        ]);
    }
    b.check("box_numeric_matches", box_ok);
    b.payload("box_window", &window)?;
    b.tables.push(bt);

    let mut sq = Table::new("square_identity", &["trial", "delta", "lhs", "rhs", "rel_err"]);
    let mut sq_ok = true;
    for t in SquareTrial::ALL {
        let s = square_identity(t, &params);
        sq_ok &= s.rel_err() <= SQUARE_IDENTITY_TOL;
        let name = serde_json::to_value(t)?.as_str().unwrap_or_default().to_string();
        sq.push(vec![
            name,
            fmt_f64(s.delta),
            fmt_f64(s.lhs),
            fmt_f64(s.rhs),
            fmt_f64(s.rel_err()),
        ]);
    }
    b.check("square_identity", sq_ok);
    b.tables.push(sq);
    Ok(b)
}

fn expectation_name(e: Expectation) -> &'static str {
    match e {
        Expectation::Present => "present",
        Expectation::Absent => "absent",
        Expectation::Unasserted => "unasserted",
    }
}

#[derive(Debug, Serialize)]
struct FiberCheck {
    two_d_min_abs: f64,
    union_min_abs: f64,
    rel_diff: f64,
    union_edge: f64,
}

fn scan_table(r: &ScanResult) -> Table {
    let mut t = Table::new(
        "scan",
        &[
            "axis_value",
            "predicted",
            "observed_count",
            "min_abs_lambda",
            "min_participation",
            "agreement",
        ],
    );
    for p in &r.points {
        t.push(vec![
            fmt_f64(p.axis_value),
            expectation_name(p.expectation).into(),
            p.observed_count.to_string(),
            fmt_opt(p.min_abs_lambda),
            fmt_opt(p.min_participation),
            fmt_bool(p.agreement),
        ]);
    }
    t
}

/// Predictions that can be stated before solving.
fn scan_predictions(cfg: &RunConfig, scan: &ScanConfig) -> CliResult<Vec<Prediction>> {
    let params = cfg.params();
    Ok(match scan {
        ScanConfig::BoxStrength { a, b, values, .. } => predict_potential(&params, *a, *b, values)?,
        ScanConfig::Epsilon { w, values, .. } => predict_perturbation(&params, w, values)?,
        ScanConfig::Convergence { .. } => Vec::new(),
        ScanConfig::Delocalization { values, .. } => {
            let expectation = if cfg.potential.is_zero() {
                Expectation::Absent
            } else {
                Expectation::Unasserted
            };
            values
                .iter()
                .map(|&l| Prediction {
                    axis_value: l,
                    expectation,
                    criterion: 0.0,
                    paper_criterion: None,
                })
                .collect()
        }
    })
}

pub fn scan(cfg: &RunConfig, seed: u64, out: &Path) -> CliResult<ResultBundle> {
    let sc = cfg
        .scan
        .as_ref()
        .ok_or_else(|| CliError::Config("scan: block required for the scan command".into()))?;
    let params = cfg.params();
    let grid = cfg.grid();
    let predictions = scan_predictions(cfg, sc)?;
    fs::create_dir_all(out)?;
    let mut text = serde_json::to_string_pretty(&predictions)?;
    text.push('\n');
    fs::write(out.join("predictions.json"), text)?;

    let mut b = ResultBundle::new("scan", cfg, seed);
    match sc {
        ScanConfig::BoxStrength { a, b: bb, values, .. } => {
            let r = scan_potential(&params, &grid, *a, *bb, values, &cfg.solver)?;
            b.check("scan_agreement", r.all_asserted_agree());
            b.tables.push(scan_table(&r));
            b.payload("scan", &r)?;
        }
        ScanConfig::Epsilon { w, values, .. } => {
            let r = scan_perturbation(&params, &grid, w, values, &cfg.solver)?;
            b.check("scan_agreement", r.all_asserted_agree());
            b.tables.push(scan_table(&r));
            b.payload("scan", &r)?;
        }
        ScanConfig::Delocalization { h, values, .. } => {
            let r = delocalization_probe(&params, *h, values, &cfg.potential, &cfg.solver)?;
            b.check("scan_agreement", r.all_asserted_agree());
            b.tables.push(scan_table(&r));
            b.payload("scan", &r)?;
        }
        ScanConfig::Convergence { observable, ladder, .. } => {
            let s = convergence_study(&params, &grid, &cfg.potential, *observable, ladder, &cfg.solver)?;
            let name = serde_json::to_value(observable)?
                .as_str()
                .unwrap_or_default()
                .to_string();
            let mut t = Table::new("convergence", &["rung", "observable", "value", "fitted_order"]);
            for (i, v) in s.values.iter().enumerate() {
                t.push(vec![i.to_string(), name.clone(), fmt_f64(*v), fmt_opt(s.fitted_order)]);
            }
            b.check("convergence_order_positive", s.fitted_order.is_some_and(|o| o > 0.0));
            b.tables.push(t);
            b.payload("convergence", &s)?;
        }
    }
    if sc.fiber_check() {
        let d = params.delta();
        let op = assemble_operator(&grid, &params, &PotentialModel::None.on(&grid)?)?;
        let two_d =
            min_abs_in_band(&op, 0.0, 4.0 * d, &cfg.solver.gap_options())?.map_or(f64::NAN, |e| e.eigenvalue.abs());
        let union = matched_union_min_abs(&grid, &params)?;
        let edge = union_edge(&xi_grid(cfg.fiber.xi_max, cfg.fiber.n_xi), &params)?;
        let rel_diff = (two_d - union).abs() / union;
        b.check("fiber_2d_consistent", rel_diff <= FIBER_MATCH_TOL);
        b.check("fiber_union_edge", edge == d);
        b.payload(
            "fiber_check",
            &FiberCheck {
                two_d_min_abs: two_d,
                union_min_abs: union,
                rel_diff,
                union_edge: edge,
            },
        )?;
    }
    Ok(b)
}

pub fn fiber(cfg: &RunConfig, seed: u64) -> CliResult<ResultBundle> {
    let params = cfg.params();
    let f = &cfg.fiber;
    let xs = xi_grid(f.xi_max, f.n_xi);
    let spectra = fiber_scan(&xs, &params, f.ny, f.y_max)?;
    let mut b = ResultBundle::new("fiber", cfg, seed);
    let mut t = Table::new("fiber", &["xi", "edge", "min_abs", "asymmetry"]);
    for s in &spectra {
        t.push(vec![
            fmt_f64(s.xi),
            fmt_f64(s.edge),
            fmt_f64(s.min_abs()),
            fmt_f64(s.asymmetry()),
        ]);
    }
    b.tables.push(t);
    let d = params.delta();
    let edge = union_edge(&xs, &params)?;
    b.check("fiber_union_edge", edge == d);
    if let Some(s0) = spectra.iter().min_by(|a, b| a.xi.abs().total_cmp(&b.xi.abs())) {
        let expect = s0.edge;
        b.check(
            "fiber_edge_discrete",
            (s0.min_abs() - expect).abs() <= FIBER_MATCH_TOL * expect,
        );
    }
    b.payload("union_edge", &edge)?;
    Ok(b)
}

/// Assembled matrix in coordinate text format, plus a Hermiticity check.
pub fn export_matrix(cfg: &RunConfig, seed: u64, out: &Path) -> CliResult<ResultBundle> {
    let params = cfg.params();
    let grid = cfg.grid();
    let pot = cfg.potential.on(&grid)?;
    let (op, name) = match cfg.solver.mode {
        SolverMode::SquareForm => (assemble_square_form(&grid, &params, &pot)?, "square_form.mtx"),
        _ => (assemble_operator(&grid, &params, &pot)?, "operator.mtx"),
    };
    let mut b = ResultBundle::new("export-matrix", cfg, seed);
    b.check("hermitian_exact", op.matrix().hermitian_defect() == 0.0);
    b.payload("dimension", &op.dim())?;
    b.payload("nnz", &op.matrix().nnz())?;
    fs::create_dir_all(out)?;
    let file = fs::File::create(out.join(name))?;
    export_matrix_market(&op, std::io::BufWriter::new(file))?;
    Ok(b)
}
