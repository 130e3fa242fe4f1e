//! Score injection into a county FeatureCollection.
//!
//! Geometry and every existing member are passed through as opaque JSON.
//! The only change to a matched feature is one new (or overwritten)
//! property holding its score.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::geo_names::{canonicalize_county_name, CountyKey};
use crate::scoring::CountyScore;

pub const DEFAULT_SCORE_PROPERTY: &str = "investment_score";
pub const DEFAULT_STATE_PROPERTY: &str = "STATE";
pub const DEFAULT_NAME_PROPERTY: &str = "NAME";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoJsonOptions {
    /// Property receiving the score.
    pub property_name: String,
    /// Inject `1 - score` so that high values mean poor investments, for
    /// viewers that paint high values red.
    pub use_viz_inversion: bool,
    pub state_property: String,
    pub name_property: String,
}

impl Default for GeoJsonOptions {
    fn default() -> Self {
        GeoJsonOptions {
            property_name: DEFAULT_SCORE_PROPERTY.to_string(),
            use_viz_inversion: true,
            state_property: DEFAULT_STATE_PROPERTY.to_string(),
            name_property: DEFAULT_NAME_PROPERTY.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnmatchedFeature {
    pub index: usize,
    pub state: String,
    pub name: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub features: usize,
    pub matched: usize,
    pub unmatched_features: Vec<UnmatchedFeature>,
    pub unmatched_scores: Vec<CountyKey>,
}

fn features(doc: &Value) -> Result<&Vec<Value>> {
    if doc.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(Error::Format(
            "GeoJSON root is not a FeatureCollection".into(),
        ));
    }
    doc.get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("FeatureCollection has no features array".into()))
}

/// State FIPS from a property that may be a string ("08") or a number (8).
fn state_fips_of(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            (!s.is_empty() && s.len() <= 2 && s.bytes().all(|b| b.is_ascii_digit()))
                .then(|| format!("{s:0>2}"))
        }
        Value::Number(n) => n.as_u64().filter(|n| *n < 100).map(|n| format!("{n:02}")),
        _ => None,
    }
}

fn identity(feature: &Value, opts: &GeoJsonOptions) -> Option<(String, String)> {
    let props = feature.get("properties")?.as_object()?;
    let state = state_fips_of(props.get(&opts.state_property)?)?;
    let name = props.get(&opts.name_property)?.as_str()?.to_string();
    Some((state, name))
}

/// Checks the document shape and that every feature carries usable state
/// and name properties. Returns the feature count.
pub fn validate_geojson(doc: &Value, opts: &GeoJsonOptions) -> Result<usize> {
    let feats = features(doc)?;
    let bad: Vec<usize> = feats
        .iter()
        .enumerate()
        .filter(|(_, f)| identity(f, opts).is_none())
        .map(|(i, _)| i)
        .collect();
    if !bad.is_empty() {
        let list: Vec<String> = bad.iter().map(|i| i.to_string()).collect();
        return Err(Error::Format(format!(
            "features missing a valid {} or {} property at index(es) {}",
            opts.state_property,
            opts.name_property,
            list.join(", ")
        )));
    }
    Ok(feats.len())
}

/// Injects each county's score into the feature with the same state FIPS
/// and canonical name.
///
/// A score that matches two or more features is fatal, as it means the
/// document repeats a county.
pub fn augment_geojson(
    mut doc: Value,
    scores: &[CountyScore],
    opts: &GeoJsonOptions,
) -> Result<(Value, MatchReport)> {
    validate_geojson(&doc, opts)?;

    let by_key: HashMap<&CountyKey, usize> = scores
        .iter()
        .enumerate()
        .map(|(i, s)| (&s.key, i))
        .collect();
    let mut hits = vec![0usize; scores.len()];
    let mut report = MatchReport::default();

    let feats = doc
        .get_mut("features")
        .and_then(Value::as_array_mut)
        .expect("validated above");
    report.features = feats.len();

    for (index, feature) in feats.iter_mut().enumerate() {
        let (state, name) = identity(feature, opts).expect("validated above");
        let key = canonicalize_county_name(&name)
            .ok()
            .map(|county_name| CountyKey {
                state_fips: state.clone(),
                county_name,
            });
        let Some(&ix) = key.as_ref().and_then(|k| by_key.get(k)) else {
            report
                .unmatched_features
                .push(UnmatchedFeature { index, state, name });
            continue;
        };
        hits[ix] += 1;
        if hits[ix] > 1 {
            return Err(Error::AmbiguousMatch(scores[ix].key.to_string()));
        }
        let s = &scores[ix];
        let value = if opts.use_viz_inversion {
            s.score_viz
        } else {
            s.score
        };
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain(value));
        }
        let number = Number::from_f64(value).ok_or(Error::NonFinite(ix))?;
        feature
            .get_mut("properties")
            .and_then(Value::as_object_mut)
            .expect("validated above")
            .insert(opts.property_name.clone(), Value::Number(number));
        report.matched += 1;
    }

    report.unmatched_scores = scores
        .iter()
        .zip(&hits)
        .filter(|(_, h)| **h == 0)
        .map(|(s, _)| s.key.clone())
        .collect();
    Ok((doc, report))
}
