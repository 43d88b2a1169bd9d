//! Run configuration: defaults, JSON config file, and flag precedence.

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Deserialize;
use std::fs;
use std::path::Path;

/// Rendering of reports: CSV rows for tables and `name = value` lines for
/// scalar summaries, or a single JSON document at full precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Resolved parameters for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alpha: f64,
    pub lambda: f64,
    pub horizon: f64,
    pub currency_label: String,
    pub output_format: OutputFormat,
    pub precision: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            lambda: 0.0,
            horizon: 10.0,
            currency_label: String::new(),
            output_format: OutputFormat::Csv,
            precision: 6,
        }
    }
}

/// Optional overrides read from `--config <json>`. Keys mirror the
/// [`RunConfig`] field names exactly.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    alpha: Option<f64>,
    lambda: Option<f64>,
    horizon: Option<f64>,
    currency_label: Option<String>,
    output_format: Option<OutputFormat>,
    precision: Option<usize>,
}

/// Command-line values that participate in precedence resolution.
#[derive(Debug, Default)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub lambda: Option<f64>,
    pub horizon: Option<f64>,
    pub format: Option<OutputFormat>,
    pub precision: Option<usize>,
}

impl RunConfig {
    /// Builds the effective configuration: defaults, overridden by the JSON
    /// config file, overridden by command-line flags.
    pub fn resolve(flags: &Overrides, config_path: Option<&Path>) -> Result<Self> {
        let file = match config_path {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read config file {}", path.display()))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .with_context(|| format!("invalid config file {}", path.display()))?
            }
            None => ConfigFile::default(),
        };

        let defaults = RunConfig::default();
        let config = RunConfig {
            alpha: flags.alpha.or(file.alpha).unwrap_or(defaults.alpha),
            lambda: flags.lambda.or(file.lambda).unwrap_or(defaults.lambda),
            horizon: flags.horizon.or(file.horizon).unwrap_or(defaults.horizon),
            currency_label: file.currency_label.unwrap_or(defaults.currency_label),
            output_format: flags
                .format
                .or(file.output_format)
                .unwrap_or(defaults.output_format),
            precision: flags
                .precision
                .or(file.precision)
                .unwrap_or(defaults.precision),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            bail!(
                "alpha must be a finite non-negative rate, got {}",
                self.alpha
            );
        }
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            bail!(
                "lambda must be a finite non-negative value, got {}",
                self.lambda
            );
        }
        if !self.horizon.is_finite() || self.horizon <= 0.0 {
            bail!("horizon must be positive, got {}", self.horizon);
        }
        if !(1..=15).contains(&self.precision) {
            bail!("precision must be between 1 and 15, got {}", self.precision);
        }
        Ok(())
    }
}
