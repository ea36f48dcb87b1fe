//! Real-data workflow: normal observations are mapped to gamma variates with
//! the normal-gamma transformation and then fed to the stopping rules.
//!
//! For i.i.d. `N(μ, σ²)` inputs, `Yᵢ = (i/(i+1)) (X_{i+1} - X̄ᵢ)²` are i.i.d.
//! `Γ(1/2, 2σ²)`. The transform uses running means and is therefore order
//! dependent; file order is preserved throughout.

use std::path::Path;

use serde::Serialize;

use crate::engine::{run_to_completion, RunOutcome, StoppingConfig};
use crate::error::{Error, Result};
use crate::target::{TargetFunction, TargetKind};

/// Shape of the transformed observations.
pub const TRANSFORMED_SHAPE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    source_label: String,
}

impl Dataset {
    pub fn new(values: Vec<f64>, source_label: impl Into<String>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Data(format!(
                "dataset needs at least 2 values, got {}",
                values.len()
            )));
        }
        Ok(Dataset {
            values,
            source_label: source_label.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn normal_gamma_transform(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.len() < 2 {
        return Err(Error::Data(format!(
            "the normal-gamma transform needs at least 2 values, got {}",
            xs.len()
        )));
    }
    let mut out = Vec::with_capacity(xs.len() - 1);
    let mut running_sum = xs[0];
    for (i, &next) in xs.iter().enumerate().skip(1) {
        // i values seen so far
        let i = i as f64;
        let running_mean = running_sum / i;
        let dev = next - running_mean;
        out.push(i / (i + 1.0) * dev * dev);
        running_sum += next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalysisOptions {
    /// Drop zero transformed values (ties in the raw data) instead of failing.
    pub drop_zeros: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub target: TargetFunction,
    pub m: u64,
    pub b: f64,
    pub terminal_n: Option<u64>,
    pub estimate: Option<f64>,
    pub exhausted: bool,
    /// Transformed observations available to the rule.
    pub available: usize,
    pub dropped_zeros: usize,
}

/// Transforms `dataset` and runs the rule for `kind` with `α = 1/2`.
pub fn analyze(
    dataset: &Dataset,
    kind: TargetKind,
    m: u64,
    b: f64,
    options: AnalysisOptions,
) -> Result<AnalysisReport> {
    let target = TargetFunction::new(kind, TRANSFORMED_SHAPE)?;
    let transformed = normal_gamma_transform(dataset.values())?;
    let total = transformed.len();
    let observations: Vec<f64> = if options.drop_zeros {
        transformed.into_iter().filter(|&y| y != 0.0).collect()
    } else {
        if let Some(pos) = transformed.iter().position(|&y| y == 0.0) {
            return Err(Error::Data(format!(
                "transformed observation {} is zero (tie with the running mean); \
                 enable zero dropping to skip such values",
                pos + 1
            )));
        }
        transformed
    };
    let dropped_zeros = total - observations.len();
    let available = observations.len();
    let config = StoppingConfig::new(m, b, TRANSFORMED_SHAPE);
    let report = match run_to_completion(target, config, observations)? {
        RunOutcome::Stopped(result) => AnalysisReport {
            target,
            m,
            b,
            terminal_n: Some(result.terminal_n),
            estimate: Some(result.g_estimate),
            exhausted: false,
            available,
            dropped_zeros,
        },
        RunOutcome::Exhausted(_) => AnalysisReport {
            target,
            m,
            b,
            terminal_n: None,
            estimate: None,
            exhausted: true,
            available,
            dropped_zeros,
        },
    };
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl ColumnSelector {
    /// Digits select by zero-based index, anything else by header name.
    pub fn parse(spec: &str) -> Self {
        match spec.parse::<usize>() {
            Ok(index) => ColumnSelector::Index(index),
            Err(_) => ColumnSelector::Name(spec.to_string()),
        }
    }
}

/// Reads one numeric column. Blank lines are skipped and every cell must be
/// a plain decimal number.
pub fn load_csv(path: &Path, column: &ColumnSelector, has_header: bool) -> Result<Dataset> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let parse_err = |line: u64, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let file = std::fs::File::open(path).map_err(io_err)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_reader(file);

    let index = match column {
        ColumnSelector::Index(i) => *i,
        ColumnSelector::Name(name) => {
            if !has_header {
                return Err(parse_err(
                    1,
                    format!("column {name:?} selected by name but the file has no header"),
                ));
            }
            let headers = reader.headers().map_err(|e| csv_error(path, e))?;
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| parse_err(1, format!("no column named {name:?}")))?
        }
    };

    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let cell = record
            .get(index)
            .ok_or_else(|| parse_err(line, format!("missing column {index}")))?;
        values.push(parse_decimal(cell).ok_or_else(|| {
            parse_err(line, format!("cannot parse {cell:?} as a decimal number"))
        })?);
    }
    let label = path.display().to_string();
    Dataset::new(values, label.clone())
        .map_err(|_| parse_err(0, "fewer than 2 values in the selected column".into()))
}

fn parse_decimal(cell: &str) -> Option<f64> {
    let plain = cell
        .bytes()
        .all(|c| c.is_ascii_digit() || matches!(c, b'.' | b'-' | b'+' | b'e' | b'E'));
    if !plain {
        return None;
    }
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    let message = match e.kind() {
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => format!(
            "expected {expected_len} field(s), found {len} (decimal commas are not accepted)"
        ),
        _ => e.to_string(),
    };
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        _ => Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        },
    }
}
