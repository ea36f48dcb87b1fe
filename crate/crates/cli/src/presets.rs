use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::CliError;

pub const BUILTIN: &str = include_str!("../presets.toml");
pub const SUPPORTED_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presets {
    pub version: u32,
    pub tables: BTreeMap<String, TablePreset>,
    pub analysis: AnalysisPreset,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablePreset {
    pub target: String,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default)]
    pub c: Option<f64>,
    pub m: u64,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisPreset {
    pub m: Vec<u64>,
    pub c: f64,
    pub b_mean: Vec<f64>,
    pub b_variance: Vec<f64>,
    pub b_rate: Vec<f64>,
    pub b_survival: Vec<f64>,
}

impl AnalysisPreset {
    pub fn b_grid(&self, target: &str) -> &[f64] {
        match target {
            "mean" => &self.b_mean,
            "variance" => &self.b_variance,
            "rate" => &self.b_rate,
            _ => &self.b_survival,
        }
    }
}

impl Presets {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let (text, origin) = match path {
            Some(p) => (
                std::fs::read_to_string(p)
                    .map_err(|e| CliError::input(format!("{}: {e}", p.display())))?,
                p.display().to_string(),
            ),
            None => (BUILTIN.to_string(), "built-in presets".to_string()),
        };
        let presets: Presets = toml::from_str(&text).map_err(|e| {
            CliError::input(format!("{origin}: {}", e.message().replace('\n', " ")))
        })?;
        if presets.version != SUPPORTED_VERSION {
            return Err(CliError::input(format!(
                "{origin}: unsupported presets version {} (expected {SUPPORTED_VERSION})",
                presets.version
            )));
        }
        Ok(presets)
    }

    pub fn table(&self, id: u32) -> Result<&TablePreset, CliError> {
        self.tables.get(&id.to_string()).ok_or_else(|| {
            let known: Vec<&str> = self.tables.keys().map(String::as_str).collect();
            CliError::usage(format!(
                "unknown table {id}; available tables: {}",
                known.join(", ")
            ))
        })
    }
}
