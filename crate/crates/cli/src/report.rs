use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use tempfile::NamedTempFile;
use wallspace_core::Method;

use crate::config::{Format, RunConfig};

/// Monte Carlo rows above this relative standard error are flagged.
pub const WIDE_REL_STDERR: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub case: String,
    pub param: Option<f64>,
    pub estimate: Option<f64>,
    pub reference: Option<f64>,
    pub deviation: Option<f64>,
    pub stderr: Option<f64>,
    pub tolerance: Option<f64>,
    pub samples: Option<u64>,
    pub method: Option<&'static str>,
    pub pass: bool,
}

impl Row {
    pub fn new(suite: &str, case: impl Into<String>) -> Self {
        Self {
            suite: suite.to_owned(),
            case: case.into(),
            param: None,
            estimate: None,
            reference: None,
            deviation: None,
            stderr: None,
            tolerance: None,
            samples: None,
            method: None,
            pass: true,
        }
    }

    pub fn param(mut self, param: f64) -> Self {
        self.param = Some(param);
        self
    }

    pub fn estimate(mut self, estimate: f64) -> Self {
        self.estimate = Some(estimate);
        self
    }

    /// Set the reference and the deviation `estimate − reference`.
    pub fn reference(mut self, reference: f64) -> Self {
        self.reference = Some(reference);
        self.deviation = self.estimate.map(|e| e - reference);
        self
    }

    pub fn deviation(mut self, deviation: f64) -> Self {
        self.deviation = Some(deviation);
        self
    }

    pub fn stderr(mut self, stderr: f64) -> Self {
        self.stderr = Some(stderr);
        self
    }

    pub fn tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    pub fn samples(mut self, samples: u64) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn method(mut self, method: Method) -> Self {
        self.method = Some(method.as_str());
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    fn wide(&self) -> bool {
        match (self.method, self.estimate, self.stderr) {
            (Some(m), Some(e), Some(s)) if m == Method::MonteCarlo.as_str() && e != 0.0 => {
                s / e.abs() > WIDE_REL_STDERR
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_halfwidth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_max: Option<f64>,
    pub rows: usize,
    pub failed_rows: usize,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_seconds: Option<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct Findings {
    pub pass: bool,
    pub c_hat: Option<f64>,
    pub c_halfwidth: Option<f64>,
    pub defect_max: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, rows: Vec<Row>, findings: Findings) -> Self {
        let failed_rows = rows.iter().filter(|r| !r.pass).count();
        let wide = rows.iter().filter(|r| r.wide()).count();
        let mut warnings = Vec::new();
        if wide > 0 {
            warnings.push(format!(
                "wide error bars: {wide} rows have relative standard error above {}%",
                WIDE_REL_STDERR * 100.0
            ));
        }
        let summary = Summary {
            pass: findings.pass,
            c_hat: findings.c_hat,
            c_halfwidth: findings.c_halfwidth,
            defect_max: findings.defect_max,
            rows: rows.len(),
            failed_rows,
            warnings,
            duration_seconds: None,
        };
        Self { version: env!("CARGO_PKG_VERSION").to_owned(), config, rows, summary }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Rows only, one header line.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        for row in &self.rows {
            writer.serialize(row)?;
        }
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if path.is_dir() {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "output path is a directory"));
    }
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
