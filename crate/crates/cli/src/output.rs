//! Result bundles and their on-disk form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Format, RunConfig};
use crate::error::CliResult;

/// Fixed float format: 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".into(), fmt_f64)
}

pub fn fmt_bool(b: Option<bool>) -> String {
    b.map_or_else(|| "na".into(), |b| b.to_string())
}

/// One CSV report.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&'static str]) -> Self {
        Table {
            name: name.into(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

/// `sha256("blob {len}\0{text}")`, hex encoded.
pub fn content_hash(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", text.len()).as_bytes());
    h.update(text.as_bytes());
    h.finalize().iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub timestamp_unix: u64,
    pub config_hash: String,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultBundle {
    pub command: String,
    pub config: RunConfig,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub payloads: BTreeMap<String, serde_json::Value>,
    pub provenance: Provenance,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl ResultBundle {
    pub fn new(command: &str, config: &RunConfig, seed: u64) -> Self {
        let timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        ResultBundle {
            command: command.into(),
            config: config.clone(),
            checks: BTreeMap::new(),
            payloads: BTreeMap::new(),
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION"),
                timestamp_unix,
                config_hash: content_hash(&config.canonical()),
                seed,
                threads: rayon::current_num_threads(),
            },
            tables: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool) {
        self.checks.insert(name.into(), pass);
    }

    pub fn payload(&mut self, name: &str, value: &impl Serialize) -> CliResult<()> {
        self.payloads.insert(name.into(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    /// Writes the CSV tables and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> CliResult<()> {
        fs::create_dir_all(dir)?;
        let out = &self.config.output;
        if out.wants(Format::Csv) {
            for t in &self.tables {
                fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv())?;
            }
        }
        if out.wants(Format::Json) {
            let mut s = serde_json::to_string_pretty(self)?;
            s.push('\n');
            fs::write(dir.join("summary.json"), s)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Diagnostics<'a> {
    error: String,
    detail: &'a semidirac::Error,
    config_hash: String,
}

/// `diagnostics.json` for a failed solve.
pub fn write_diagnostics(dir: &Path, config: &RunConfig, err: &semidirac::Error) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    let d = Diagnostics {
        error: err.to_string(),
        detail: err,
        config_hash: content_hash(&config.canonical()),
    };
    fs::write(dir.join("diagnostics.json"), serde_json::to_string_pretty(&d)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.1), "-1.0000000000000001e-1");
        assert_eq!(fmt_f64(f64::NAN), "nan");
        assert_eq!(fmt_opt(None), "nan");
        let x = 0.1 + 0.2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn git_blob_hash() {
        // printf 'blob 6\0hello\n' | sha256sum
        assert_eq!(
            content_hash("hello\n"),
            "2cf8d83d9ee29543b34a87727421fdecb7e3f3a183d337639025de576db9ebb4"
        );
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new("x", &["a", "b"]);
        t.push(vec!["1".into(), "2".into()]);
        assert_eq!(t.to_csv(), "a,b\n1,2\n");
    }
}
