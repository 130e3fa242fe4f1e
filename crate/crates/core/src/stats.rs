//! Correlation between vulnerability and growth, and summary statistics.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::aggregate::{annual_growth, CountyAggregate};
use crate::error::{Error, Result};
use crate::ingest::SviRecord;
use crate::scoring::CountyScore;

/// Below this |r| a correlation is read as little to none.
pub const NEGLIGIBLE_BELOW: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Negligible,
    Weak,
    Moderate,
    Strong,
    VeryStrong,
}

impl Strength {
    pub fn of(r: f64) -> Self {
        match r.abs() {
            a if a < NEGLIGIBLE_BELOW => Strength::Negligible,
            a if a < 0.4 => Strength::Weak,
            a if a < 0.6 => Strength::Moderate,
            a if a < 0.8 => Strength::Strong,
            _ => Strength::VeryStrong,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strength::Negligible => "negligible",
            Strength::Weak => "weak",
            Strength::Moderate => "moderate",
            Strength::Strong => "strong",
            Strength::VeryStrong => "very_strong",
        }
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationResult {
    pub r: f64,
    pub n: usize,
    pub interpretation: Strength,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample Pearson correlation, two-pass (means first, then centered sums).
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<CorrelationResult> {
    if xs.len() != ys.len() {
        return Err(Error::Shape(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::EmptyDomain);
    }
    if let Some(ix) = xs.iter().chain(ys).position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(ix % xs.len()));
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateVariance("first series"));
    }
    if syy == 0.0 {
        return Err(Error::DegenerateVariance("second series"));
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    Ok(CorrelationResult {
        r,
        n: xs.len(),
        interpretation: Strength::of(r),
    })
}

/// Pearson r between SVI and average annual growth over counties present in
/// both inputs, paired in key order.
pub fn svi_growth_correlation(
    aggregates: &[CountyAggregate],
    svi_records: &[SviRecord],
) -> Result<CorrelationResult> {
    let svi: BTreeMap<_, _> = svi_records
        .iter()
        .map(|s| (&s.key, s.svi_overall))
        .collect();
    let mut pairs: Vec<_> = aggregates
        .iter()
        .filter_map(|a| svi.get(&a.key).map(|s| (&a.key, *s, annual_growth(a))))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(b.0));
    let xs: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.2).collect();
    pearson(&xs, &ys)
}

/// Order statistics of one column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distribution {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
}

impl Distribution {
    pub fn of(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        Ok(Distribution {
            min: sorted[0],
            max: sorted[n - 1],
            mean: mean(values),
            median,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub score: Distribution,
    pub growth_raw: Distribution,
}

pub fn summarize(scores: &[CountyScore]) -> Result<Summary> {
    let score: Vec<f64> = scores.iter().map(|s| s.score).collect();
    let growth: Vec<f64> = scores.iter().map(|s| s.growth_raw).collect();
    Ok(Summary {
        count: scores.len(),
        score: Distribution::of(&score)?,
        growth_raw: Distribution::of(&growth)?,
    })
}
