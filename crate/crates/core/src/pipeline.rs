//! End-to-end runs behind the `score`, `stats` and `validate` commands.
//!
//! Each run computes everything in memory first and only then writes its
//! outputs, each through an atomic rename, so a failed run leaves no
//! half-written files behind.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use serde_json::Value;

use crate::aggregate::{filter_min_months, AggregateReport, CountyAggregate, CountyAggregator};
use crate::config::{ConfigEcho, RunConfig};
use crate::emit::{self, augment_geojson, validate_geojson, GeoJsonOptions, RunReport};
use crate::error::{Error, Result};
use crate::geo_names::StateCrosswalk;
use crate::ingest::{self, IngestFilter, IngestReport, MarketReader, SviRecord};
use crate::scoring::{score_counties, CountyScore};
use crate::stats::{summarize, svi_growth_correlation};

/// Number of counties listed at each end of the ranking in the summary.
const SUMMARY_TOP_N: usize = 5;

/// Market file → per-county aggregates, in one streaming pass.
pub fn load_aggregates(
    path: &Path,
    filter: IngestFilter,
    min_months: u32,
    xwalk: &StateCrosswalk,
) -> Result<(Vec<CountyAggregate>, IngestReport, AggregateReport)> {
    let stream = ingest::open_input(path)?;
    let mut reader = MarketReader::new(stream, filter).map_err(|e| with_path(e, path))?;
    let mut agg = CountyAggregator::new(xwalk);
    for rec in reader.by_ref() {
        agg.push(&rec.map_err(|e| with_path(e, path))?);
    }
    let ingest = reader.into_report().with_source(path.display().to_string());
    let (aggregates, mut report) = agg.finish();
    let kept = filter_min_months(aggregates, min_months, &mut report);
    Ok((kept, ingest, report))
}

pub fn load_svi(path: &Path, xwalk: &StateCrosswalk) -> Result<(Vec<SviRecord>, IngestReport)> {
    let stream = ingest::open_input(path)?;
    let (recs, report) =
        ingest::svi::parse_svi_with(stream, xwalk).map_err(|e| with_path(e, path))?;
    Ok((recs, report.with_source(path.display().to_string())))
}

pub fn load_geojson(path: &Path) -> Result<Value> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn with_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Stream(source) => Error::io(path, source),
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        Error::MissingColumns(cols) => Error::Format(format!(
            "{}: missing required column(s): {}",
            path.display(),
            cols.join(", ")
        )),
        other => other,
    }
}

/// Everything a `score` run produced.
#[derive(Debug)]
pub struct ScoreOutcome {
    pub scores: Vec<CountyScore>,
    pub geojson: Option<Value>,
    pub report: RunReport<ConfigEcho>,
}

/// Runs ingest, aggregation, join and scoring, statistics and GeoJSON
/// augmentation without writing anything.
pub fn compute_scores(config: &RunConfig) -> Result<ScoreOutcome> {
    let market_path = config.require_market()?;
    let svi_path = config.require_svi()?;
    let xwalk = StateCrosswalk::bundled();

    let filter = IngestFilter {
        property_type: config.property_type_filter.clone(),
    };
    let (aggregates, market_report, agg_report) =
        load_aggregates(market_path, filter, config.min_months, xwalk)?;
    let (svi, svi_report) = load_svi(svi_path, xwalk)?;

    let mut report = RunReport::new(config.echo());
    report.ingest.market = Some(market_report);
    report.ingest.svi = Some(svi_report);
    report.aggregate = Some(agg_report);

    let (scores, join) = score_counties(&aggregates, &svi, config.weights)?;
    report.join = Some(join);

    match svi_growth_correlation(&aggregates, &svi) {
        Ok(c) => report.correlation = Some(c),
        Err(e) => report.correlation_error = Some(e.to_string()),
    }
    report.summary = Some(summarize(&scores)?);

    let geojson = match &config.geojson_path {
        Some(path) => {
            let doc = load_geojson(path)?;
            let opts = GeoJsonOptions {
                property_name: config.score_property_name.clone(),
                use_viz_inversion: config.viz_invert,
                ..GeoJsonOptions::default()
            };
            let (doc, matches) =
                augment_geojson(doc, &scores, &opts).map_err(|e| with_path(e, path))?;
            report.match_report = Some(matches);
            Some(doc)
        }
        None => None,
    };

    Ok(ScoreOutcome {
        scores,
        geojson,
        report,
    })
}

/// Writes the outputs configured in `config`.
pub fn write_outputs(config: &RunConfig, outcome: &ScoreOutcome) -> Result<()> {
    if let Some(path) = &config.out_csv {
        emit::write_atomic(path, |w| emit::write_scores_csv(&outcome.scores, w))?;
    }
    if let (Some(path), Some(doc)) = (&config.out_geojson, &outcome.geojson) {
        emit::write_atomic(path, |w| {
            serde_json::to_writer(&mut *w, doc).map_err(|e| Error::Stream(e.into()))?;
            Ok(w.write_all(b"\n")?)
        })?;
    }
    if let Some(path) = &config.out_report {
        emit::write_atomic(path, |w| emit::write_report_json(&outcome.report, w))?;
    }
    Ok(())
}

/// The `score` command: compute, write, print a summary to `out`.
pub fn cmd_score(config: &RunConfig, out: &mut dyn Write) -> Result<ScoreOutcome> {
    if config.out_geojson.is_some() && config.geojson_path.is_none() {
        return Err(Error::Usage("--out-geojson needs --geojson".into()));
    }
    let outcome = compute_scores(config)?;
    write_outputs(config, &outcome)?;
    print_score_summary(config, &outcome, out)?;
    Ok(outcome)
}

fn county_label(s: &CountyScore) -> String {
    let state = StateCrosswalk::bundled()
        .fips_to_state_code(&s.key.state_fips)
        .unwrap_or(&s.key.state_fips);
    format!("{}, {}", s.key.county_name, state)
}

fn print_score_summary(
    config: &RunConfig,
    outcome: &ScoreOutcome,
    out: &mut dyn Write,
) -> Result<()> {
    let r = &outcome.report;
    writeln!(
        out,
        "scored {} counties (weights growth={} resilience={})",
        outcome.scores.len(),
        config.weights.growth(),
        config.weights.resilience()
    )?;
    if let Some(s) = &r.summary {
        writeln!(
            out,
            "score: min {:.4} median {:.4} max {:.4}; mean annual growth {:.2}%",
            s.score.min,
            s.score.median,
            s.score.max,
            100.0 * s.growth_raw.mean
        )?;
    }
    writeln!(out, "top {SUMMARY_TOP_N}:")?;
    for s in outcome.scores.iter().take(SUMMARY_TOP_N) {
        writeln!(out, "  {:.4}  {}", s.score, county_label(s))?;
    }
    writeln!(out, "bottom {SUMMARY_TOP_N}:")?;
    let skip = outcome.scores.len().saturating_sub(SUMMARY_TOP_N);
    for s in outcome.scores.iter().skip(skip) {
        writeln!(out, "  {:.4}  {}", s.score, county_label(s))?;
    }
    match (&r.correlation, &r.correlation_error) {
        (Some(c), _) => writeln!(
            out,
            "svi vs growth: r = {:.3} (n = {}, {})",
            c.r, c.n, c.interpretation
        )?,
        (None, Some(e)) => writeln!(out, "svi vs growth: unavailable ({e})")?,
        _ => {}
    }
    if let Some(j) = &r.join {
        writeln!(
            out,
            "unmatched: {} market-only, {} svi-only counties",
            j.market_only.len(),
            j.svi_only.len()
        )?;
    }
    if let Some(m) = &r.match_report {
        writeln!(
            out,
            "geojson: {}/{} features matched, {} unmatched scores",
            m.matched,
            m.features,
            m.unmatched_scores.len()
        )?;
    }
    Ok(())
}

/// The `stats` command: correlation between SVI and average annual growth.
pub fn cmd_stats(config: &RunConfig, out: &mut dyn Write) -> Result<RunReport<ConfigEcho>> {
    let market_path = config.require_market()?;
    let svi_path = config.require_svi()?;
    let xwalk = StateCrosswalk::bundled();
    let filter = IngestFilter {
        property_type: config.property_type_filter.clone(),
    };
    let (aggregates, market_report, agg_report) =
        load_aggregates(market_path, filter, config.min_months, xwalk)?;
    let (svi, svi_report) = load_svi(svi_path, xwalk)?;

    let corr = svi_growth_correlation(&aggregates, &svi)?;
    writeln!(out, "r = {:.4}", corr.r)?;
    writeln!(out, "n = {}", corr.n)?;
    writeln!(out, "interpretation: {}", corr.interpretation)?;

    let mut report = RunReport::new(config.echo());
    report.ingest.market = Some(market_report);
    report.ingest.svi = Some(svi_report);
    report.aggregate = Some(agg_report);
    report.correlation = Some(corr);
    if let Some(path) = &config.out_report {
        emit::write_atomic(path, |w| emit::write_report_json(&report, w))?;
    }
    Ok(report)
}

/// Result of validating one file.
#[derive(Debug)]
pub struct FileCheck {
    pub label: &'static str,
    pub path: String,
    pub outcome: Result<String>,
}

/// The `validate` command: structural and row-level checks of whichever
/// inputs are configured. Returns the first fatal error after checking
/// every file.
pub fn cmd_validate(config: &RunConfig, out: &mut dyn Write) -> Result<Vec<FileCheck>> {
    let xwalk = StateCrosswalk::bundled();
    let mut checks = Vec::new();

    let describe = |r: &IngestReport| {
        let drops: Vec<String> = r
            .dropped
            .iter()
            .filter(|(_, n)| **n > 0)
            .map(|(k, n)| format!("{k}={n}"))
            .collect();
        format!(
            "read {} kept {} dropped {}{}",
            r.rows_read,
            r.rows_kept,
            r.rows_dropped(),
            if drops.is_empty() {
                String::new()
            } else {
                format!(" ({})", drops.join(", "))
            }
        )
    };

    if let Some(path) = &config.market_path {
        let filter = IngestFilter {
            property_type: config.property_type_filter.clone(),
        };
        let outcome = (|| {
            let stream = ingest::open_input(path)?;
            let mut reader = MarketReader::new(stream, filter).map_err(|e| with_path(e, path))?;
            for rec in reader.by_ref() {
                rec.map_err(|e| with_path(e, path))?;
            }
            Ok(describe(reader.report()))
        })();
        checks.push(FileCheck {
            label: "market",
            path: path.display().to_string(),
            outcome,
        });
    }
    if let Some(path) = &config.svi_path {
        let outcome = load_svi(path, xwalk).map(|(_, r)| describe(&r));
        checks.push(FileCheck {
            label: "svi",
            path: path.display().to_string(),
            outcome,
        });
    }
    if let Some(path) = &config.geojson_path {
        let outcome = load_geojson(path).and_then(|doc| {
            let opts = GeoJsonOptions::default();
            validate_geojson(&doc, &opts)
                .map(|n| format!("{n} features"))
                .map_err(|e| with_path(e, path))
        });
        checks.push(FileCheck {
            label: "geojson",
            path: path.display().to_string(),
            outcome,
        });
    }
    if checks.is_empty() {
        return Err(Error::Usage(
            "validate needs at least one of --market, --svi, --geojson".into(),
        ));
    }

    for c in &checks {
        match &c.outcome {
            Ok(msg) => writeln!(out, "{} {}: ok, {msg}", c.label, c.path)?,
            Err(e) => writeln!(out, "{} {}: INVALID: {e}", c.label, c.path)?,
        }
    }
    if let Some(pos) = checks.iter().position(|c| c.outcome.is_err()) {
        let failed = checks.swap_remove(pos);
        return Err(failed.outcome.unwrap_err());
    }
    Ok(checks)
}
