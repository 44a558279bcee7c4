use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use semidirac_cli::RunConfig;
use tempfile::TempDir;

const SMALL: &str = r#"{
  "params": { "delta": 1.0 },
  "grid": { "x_min": -6.0, "x_max": 6.0, "y_max": 6.0, "nx": 25, "ny": 13 },
  "solver": { "mode": "gap", "k": 4 }
}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semidirac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run_cmd(cmd: &str, config: &Path, out: &Path) -> Output {
    bin(&[
        cmd,
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ])
}

fn summary(out: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn free_spectrum_reports_empty_gap() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    let out = tmp.path().join("out");
    let o = run_cmd("spectrum", &cfg, &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("eigenvalues.csv")).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("index,lambda,residual,participation_ratio,y_decay_rate")
    );
    let s = summary(&out);
    assert_eq!(s["checks"]["gap_empty"], true);
    assert_eq!(s["checks"]["certified"], true);
    assert_eq!(s["provenance"]["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(s["config"]["grid"]["nx"], 25);
}

#[test]
fn malformed_grid_exits_2() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", &SMALL.replace("\"nx\": 25", "\"nx\": 2"));
    let o = run_cmd("spectrum", &cfg, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid"));
    assert!(!tmp.path().join("out").exists());
}

#[test]
fn dense_over_cap_exits_2() {
    let tmp = TempDir::new().unwrap();
    let text = SMALL.replace("\"mode\": \"gap\"", "\"mode\": \"dense\", \"dense_cap\": 100");
    let cfg = write_config(tmp.path(), "c.json", &text);
    let o = run_cmd("spectrum", &cfg, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dense_cap"));
}

#[test]
fn unknown_key_exits_2() {
    let tmp = TempDir::new().unwrap();
    let text = SMALL.replace("\"k\": 4", "\"k\": 4, \"shift\": 0.5");
    let cfg = write_config(tmp.path(), "c.json", &text);
    assert_eq!(run_cmd("validate-config", &cfg, tmp.path()).status.code(), Some(2));
    let missing = tmp.path().join("absent.json");
    assert_eq!(run_cmd("validate-config", &missing, tmp.path()).status.code(), Some(2));
}

#[test]
fn non_convergence_exits_3_with_diagnostics() {
    let tmp = TempDir::new().unwrap();
    let text = SMALL
        .replace(
            "\"mode\": \"gap\"",
            "\"mode\": \"square-form\", \"max_iter\": 1, \"tol\": 1e-12",
        )
        .replace("\"k\": 4", "\"k\": 2");
    let cfg = write_config(tmp.path(), "c.json", &text);
    let out = tmp.path().join("out");
    let o = run_cmd("spectrum", &cfg, &out);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let d: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("diagnostics.json")).unwrap()).unwrap();
    assert_eq!(d["detail"]["kind"], "non_convergence");
}

#[test]
fn validate_config_prints_canonical_form() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    let o = run_cmd("validate-config", &cfg, &tmp.path().join("out"));
    assert_eq!(o.status.code(), Some(0));
    let printed = String::from_utf8(o.stdout).unwrap();
    let parsed = RunConfig::parse(&printed).unwrap();
    assert_eq!(parsed, RunConfig::parse(SMALL).unwrap());
    assert_eq!(parsed.canonical(), printed.trim_end());
    assert!(!tmp.path().join("out").exists());
}

#[test]
fn quasimode_tables_and_checks() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    let out = tmp.path().join("out");
    assert_eq!(run_cmd("quasimode", &cfg, &out).status.code(), Some(0));
    let headers = [
        ("weyl.csv", "n,k,mu,branch,residual,bound_rhs"),
        (
            "cutoff.csv",
            "n,Ix,Iy,Ixx,first_deriv_identity_rel_err,second_deriv_bound_slack",
        ),
        ("a_eps.csv", "eps,a_eps_paper,a_eps_derived,divergent"),
        ("box.csv", "v0,analytic,numeric,abs_diff,in_window"),
    ];
    for (f, h) in headers {
        let text = fs::read_to_string(out.join(f)).unwrap();
        assert_eq!(text.lines().next(), Some(h), "{f}");
        assert!(!text.contains('\r'));
    }
    let weyl = fs::read_to_string(out.join("weyl.csv")).unwrap();
    assert_eq!(weyl.lines().count(), 1 + 6 * 4);
    let s = summary(&out);
    for k in [
        "weyl_slope_in_range",
        "weyl_within_bound",
        "cutoff_first_identity",
        "cutoff_second_bound",
        "square_identity",
    ] {
        assert_eq!(s["checks"][k], true, "{k}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for cmd in ["spectrum", "quasimode"] {
        assert_eq!(run_cmd(cmd, &cfg, &a).status.code(), Some(0));
        assert_eq!(run_cmd(cmd, &cfg, &b).status.code(), Some(0));
    }
    let mut n = 0;
    for e in fs::read_dir(&a).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "csv") {
            let name = p.file_name().unwrap();
            assert_eq!(fs::read(&p).unwrap(), fs::read(b.join(name)).unwrap(), "{name:?}");
            n += 1;
        }
    }
    assert!(n >= 5);
}

#[test]
fn scan_writes_predictions_first() {
    let tmp = TempDir::new().unwrap();
    let text = r#"{
      "params": { "delta": 2.0 },
      "grid": { "x_min": -8.4292, "x_max": 13.5708, "y_max": 14.0, "nx": 45, "ny": 29 },
      "solver": { "mode": "gap", "k": 4 },
      "scan": { "axis": "box_strength", "a": 1.0, "b": 4.141592653589793, "values": [-3.0, 0.0] }
    }"#;
    let cfg = write_config(tmp.path(), "c.json", text);
    let out = tmp.path().join("out");
    let o = run_cmd("scan", &cfg, &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let preds: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("predictions.json")).unwrap()).unwrap();
    assert_eq!(preds[0]["expectation"], "present");
    assert_eq!(preds[1]["expectation"], "absent");
    let csv = fs::read_to_string(out.join("scan.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("axis_value,predicted,observed_count,min_abs_lambda,min_participation,agreement")
    );
    assert!(lines.all(|l| l.ends_with(",true")));
}

#[test]
fn scan_requires_block() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    assert_eq!(run_cmd("scan", &cfg, &tmp.path().join("out")).status.code(), Some(2));
}

#[test]
fn export_matrix_is_hermitian() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    let out = tmp.path().join("out");
    assert_eq!(run_cmd("export-matrix", &cfg, &out).status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["checks"]["hermitian_exact"], true);
    assert_eq!(s["payloads"]["dimension"], 2 * 25 * 13 - 25);
    let text = fs::read_to_string(out.join("operator.mtx")).unwrap();
    assert!(text.lines().count() > 1);
}

#[test]
fn fiber_edge_matches_dispersion() {
    let tmp = TempDir::new().unwrap();
    let text = SMALL.replace(
        "\"solver\"",
        "\"fiber\": { \"xi_max\": 1.0, \"n_xi\": 5, \"ny\": 200, \"y_max\": 20.0 }, \"solver\"",
    );
    let cfg = write_config(tmp.path(), "c.json", &text);
    let out = tmp.path().join("out");
    assert_eq!(run_cmd("fiber", &cfg, &out).status.code(), Some(0));
    let s = summary(&out);
    assert_eq!(s["checks"]["fiber_union_edge"], true);
    assert_eq!(s["checks"]["fiber_edge_discrete"], true);
    let csv = fs::read_to_string(out.join("fiber.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn threads_flag_rejects_zero() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", SMALL);
    let o = bin(&["spectrum", "--config", cfg.to_str().unwrap(), "--threads", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reference_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        RunConfig::load(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        n += 1;
    }
    assert!(n >= 6);
}
