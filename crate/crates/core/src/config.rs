//! Run configuration: built-in defaults, an optional flat `key = value`
//! file, and command-line flags, in increasing order of precedence.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::aggregate::DEFAULT_MIN_MONTHS;
use crate::emit::geojson::DEFAULT_SCORE_PROPERTY;
use crate::error::{Error, Result};
use crate::ingest::market::DEFAULT_PROPERTY_TYPE;
use crate::scoring::ScoreWeights;

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "KOEDDS_CONFIG";

/// Partially specified settings from one source. `None` means "not set
/// here, fall through to the next source".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub market: Option<PathBuf>,
    pub svi: Option<PathBuf>,
    pub geojson: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
    pub out_geojson: Option<PathBuf>,
    pub out_report: Option<PathBuf>,
    pub weights: Option<String>,
    pub property_type: Option<String>,
    pub min_months: Option<String>,
    pub no_viz_invert: Option<bool>,
    pub score_property: Option<String>,
}

impl ConfigLayer {
    /// Parses a config file body. Keys are the long flag names without the
    /// leading dashes; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut layer = ConfigLayer::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim().to_string());
            match key {
                "market" => layer.market = Some(value.into()),
                "svi" => layer.svi = Some(value.into()),
                "geojson" => layer.geojson = Some(value.into()),
                "out-csv" => layer.out_csv = Some(value.into()),
                "out-geojson" => layer.out_geojson = Some(value.into()),
                "out-report" => layer.out_report = Some(value.into()),
                "weights" => layer.weights = Some(value),
                "property-type" => layer.property_type = Some(value),
                "min-months" => layer.min_months = Some(value),
                "score-property" => layer.score_property = Some(value),
                "no-viz-invert" => {
                    layer.no_viz_invert = Some(match value.as_str() {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        other => {
                            return Err(Error::Usage(format!(
                                "config line {}: no-viz-invert expects true/false, got {other:?}",
                                lineno + 1
                            )))
                        }
                    })
                }
                other => {
                    return Err(Error::Usage(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(layer)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ConfigLayer::parse(&text)
    }

    /// Fills every unset field of `self` from `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            market: self.market.or(lower.market),
            svi: self.svi.or(lower.svi),
            geojson: self.geojson.or(lower.geojson),
            out_csv: self.out_csv.or(lower.out_csv),
            out_geojson: self.out_geojson.or(lower.out_geojson),
            out_report: self.out_report.or(lower.out_report),
            weights: self.weights.or(lower.weights),
            property_type: self.property_type.or(lower.property_type),
            min_months: self.min_months.or(lower.min_months),
            no_viz_invert: self.no_viz_invert.or(lower.no_viz_invert),
            score_property: self.score_property.or(lower.score_property),
        }
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub market_path: Option<PathBuf>,
    pub svi_path: Option<PathBuf>,
    pub geojson_path: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
    pub out_geojson: Option<PathBuf>,
    pub out_report: Option<PathBuf>,
    pub weights: ScoreWeights,
    pub property_type_filter: String,
    pub min_months: u32,
    pub viz_invert: bool,
    pub score_property_name: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            market_path: None,
            svi_path: None,
            geojson_path: None,
            out_csv: None,
            out_geojson: None,
            out_report: None,
            weights: ScoreWeights::default(),
            property_type_filter: DEFAULT_PROPERTY_TYPE.to_string(),
            min_months: DEFAULT_MIN_MONTHS,
            viz_invert: true,
            score_property_name: DEFAULT_SCORE_PROPERTY.to_string(),
        }
    }
}

impl RunConfig {
    /// Resolves flags over an optional file layer over built-in defaults,
    /// validating weights and thresholds. Reads no input data.
    pub fn resolve(flags: ConfigLayer, file: Option<ConfigLayer>) -> Result<Self> {
        let merged = flags.over(file.unwrap_or_default());
        let defaults = RunConfig::default();
        let weights = match merged.weights {
            Some(w) => ScoreWeights::parse(&w)?,
            None => defaults.weights,
        };
        let min_months = match merged.min_months {
            Some(m) => match m.trim().parse::<u32>() {
                Ok(n) if n >= 1 => n,
                _ => {
                    return Err(Error::Usage(format!(
                        "min-months must be an integer >= 1, got {m:?}"
                    )))
                }
            },
            None => defaults.min_months,
        };
        let score_property_name = merged
            .score_property
            .unwrap_or(defaults.score_property_name);
        if score_property_name.is_empty() {
            return Err(Error::Usage("score-property must not be empty".into()));
        }
        Ok(RunConfig {
            market_path: merged.market,
            svi_path: merged.svi,
            geojson_path: merged.geojson,
            out_csv: merged.out_csv,
            out_geojson: merged.out_geojson,
            out_report: merged.out_report,
            weights,
            property_type_filter: merged
                .property_type
                .unwrap_or(defaults.property_type_filter),
            min_months,
            viz_invert: !merged.no_viz_invert.unwrap_or(false),
            score_property_name,
        })
    }

    pub fn require_market(&self) -> Result<&Path> {
        self.market_path
            .as_deref()
            .ok_or_else(|| Error::Usage("--market PATH is required".into()))
    }

    pub fn require_svi(&self) -> Result<&Path> {
        self.svi_path
            .as_deref()
            .ok_or_else(|| Error::Usage("--svi PATH is required".into()))
    }

    /// The part of the configuration recorded in run reports.
    pub fn echo(&self) -> ConfigEcho {
        let show = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        ConfigEcho {
            market: show(&self.market_path),
            svi: show(&self.svi_path),
            geojson: show(&self.geojson_path),
            weights: self.weights,
            property_type: self.property_type_filter.clone(),
            min_months: self.min_months,
            viz_invert: self.viz_invert,
            score_property: self.score_property_name.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub market: Option<String>,
    pub svi: Option<String>,
    pub geojson: Option<String>,
    pub weights: ScoreWeights,
    pub property_type: String,
    pub min_months: u32,
    pub viz_invert: bool,
    pub score_property: String,
}
