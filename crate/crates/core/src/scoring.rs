//! Growth normalization, SVI inversion and the weighted investment score.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::aggregate::{CountyAggregate, GrowthMetric};
use crate::error::{Error, Result};
use crate::geo_names::CountyKey;
use crate::ingest::SviRecord;

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Convex weights of the two score factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreWeights {
    #[serde(rename = "growth")]
    w_growth: f64,
    #[serde(rename = "resilience")]
    w_resilience: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights {
            w_growth: 0.5,
            w_resilience: 0.5,
        }
    }
}

impl ScoreWeights {
    pub fn new(w_growth: f64, w_resilience: f64) -> Result<Self> {
        for w in [w_growth, w_resilience] {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
            }
        }
        if (w_growth + w_resilience - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "{w_growth} + {w_resilience} does not sum to 1"
            )));
        }
        Ok(ScoreWeights {
            w_growth,
            w_resilience,
        })
    }

    /// Parses `"G,R"`, e.g. `"0.25,0.75"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (g, r) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidWeights(format!("expected G,R but got {s:?}")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidWeights(format!("{t:?} is not a number")))
        };
        ScoreWeights::new(num(g)?, num(r)?)
    }

    pub fn growth(&self) -> f64 {
        self.w_growth
    }

    pub fn resilience(&self) -> f64 {
        self.w_resilience
    }
}

/// Final per-county score row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountyScore {
    pub key: CountyKey,
    pub growth_raw: f64,
    pub growth_norm: f64,
    pub svi: f64,
    pub resilience: f64,
    pub score: f64,
    pub score_viz: f64,
}

/// Which counties made it through the market/SVI join.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub joined: usize,
    pub market_only: Vec<CountyKey>,
    pub svi_only: Vec<CountyKey>,
}

/// Affine remap of `values` onto [0, 1]; the minimum goes to 0 and the
/// maximum to 1. A collapsed range maps everything to 0.5.
pub fn min_max_normalize(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::EmptyDomain);
    }
    if let Some(ix) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(ix));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return Ok(vec![0.5; values.len()]);
    }
    let span = hi - lo;
    Ok(values
        .iter()
        .map(|v| ((v - lo) / span).clamp(0.0, 1.0))
        .collect())
}

fn check_unit(v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Domain(v))
    }
}

/// `1 - svi`: low vulnerability is high resilience.
pub fn resilience(svi: f64) -> Result<f64> {
    Ok(1.0 - check_unit(svi)?)
}

/// Weighted average of normalized growth and resilience.
pub fn composite_score(growth_norm: f64, resilience: f64, weights: ScoreWeights) -> Result<f64> {
    let g = check_unit(growth_norm)?;
    let r = check_unit(resilience)?;
    let raw = weights.w_growth * g + weights.w_resilience * r;
    // a convex combination never leaves [min, max]; rounding can, by an ulp
    Ok(raw.clamp(g.min(r), g.max(r)))
}

/// Joins aggregates with SVI on [`CountyKey`] and scores the joined set
/// using mean YoY price growth.
pub fn score_counties(
    aggregates: &[CountyAggregate],
    svi: &[SviRecord],
    weights: ScoreWeights,
) -> Result<(Vec<CountyScore>, JoinReport)> {
    score_counties_by(aggregates, svi, weights, GrowthMetric::default())
}

/// [`score_counties`] with an explicit growth metric.
///
/// Normalization runs over the joined counties only. Output is sorted by
/// descending score, ties by key.
pub fn score_counties_by(
    aggregates: &[CountyAggregate],
    svi: &[SviRecord],
    weights: ScoreWeights,
    metric: GrowthMetric,
) -> Result<(Vec<CountyScore>, JoinReport)> {
    let mut svi_by_key: BTreeMap<&CountyKey, &SviRecord> = BTreeMap::new();
    for rec in svi {
        if svi_by_key.insert(&rec.key, rec).is_some() {
            return Err(Error::AmbiguousMatch(rec.key.to_string()));
        }
    }
    let mut market_keys = BTreeSet::new();
    for a in aggregates {
        if !market_keys.insert(&a.key) {
            return Err(Error::AmbiguousMatch(a.key.to_string()));
        }
    }

    let mut joined = Vec::new();
    let mut market_only = Vec::new();
    for a in aggregates {
        match svi_by_key.get(&a.key) {
            Some(s) => joined.push((a, *s)),
            None => market_only.push(a.key.clone()),
        }
    }
    market_only.sort();
    let svi_only: Vec<CountyKey> = svi_by_key
        .keys()
        .filter(|k| !market_keys.contains(*k))
        .map(|k| (*k).clone())
        .collect();

    if joined.is_empty() {
        return Err(Error::EmptyJoin);
    }
    joined.sort_by(|a, b| a.0.key.cmp(&b.0.key));

    let growth: Vec<f64> = joined.iter().map(|(a, _)| metric.value(a)).collect();
    let growth_norm = min_max_normalize(&growth)?;

    let mut scores = joined
        .iter()
        .zip(growth.iter().zip(&growth_norm))
        .map(|((a, s), (&raw, &norm))| {
            let res = resilience(s.svi_overall)?;
            let score = composite_score(norm, res, weights)?;
            Ok(CountyScore {
                key: a.key.clone(),
                growth_raw: raw,
                growth_norm: norm,
                svi: s.svi_overall,
                resilience: res,
                score,
                score_viz: 1.0 - score,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_scores(&mut scores);

    let report = JoinReport {
        joined: scores.len(),
        market_only,
        svi_only,
    };
    Ok((scores, report))
}

/// Descending score, then ascending key.
pub fn sort_scores(scores: &mut [CountyScore]) {
    scores.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.key.cmp(&b.key)));
}
