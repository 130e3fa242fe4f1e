use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::aggregate::AggregateReport;
use crate::emit::geojson::MatchReport;
use crate::error::{Error, Result};
use crate::ingest::IngestReport;
use crate::scoring::JoinReport;
use crate::stats::{CorrelationResult, Summary};

/// Name of the only field that differs between two runs on the same input.
pub const TIMESTAMP_FIELD: &str = "generated_at";

#[derive(Debug, Clone, Serialize)]
pub struct IngestReports {
    pub market: Option<IngestReport>,
    pub svi: Option<IngestReport>,
}

/// Everything a run knows at the end, in one JSON document.
///
/// Stages that did not run serialize as `null`; no key is ever omitted.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport<C: Serialize> {
    pub generated_at: String,
    pub config: C,
    pub ingest: IngestReports,
    pub aggregate: Option<AggregateReport>,
    pub join: Option<JoinReport>,
    #[serde(rename = "match")]
    pub match_report: Option<MatchReport>,
    pub correlation: Option<CorrelationResult>,
    pub correlation_error: Option<String>,
    pub summary: Option<Summary>,
}

impl<C: Serialize> RunReport<C> {
    pub fn new(config: C) -> Self {
        RunReport {
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            config,
            ingest: IngestReports {
                market: None,
                svi: None,
            },
            aggregate: None,
            join: None,
            match_report: None,
            correlation: None,
            correlation_error: None,
            summary: None,
        }
    }

    /// The report as a JSON value with keys sorted at every level.
    pub fn to_value(&self) -> Result<Value> {
        serde_json::to_value(self).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Pretty-printed, key-sorted JSON followed by a newline.
pub fn write_report_json<C: Serialize, W: Write>(
    report: &RunReport<C>,
    mut destination: W,
) -> Result<()> {
    let value = report.to_value()?;
    serde_json::to_writer_pretty(&mut destination, &value).map_err(|e| Error::Stream(e.into()))?;
    destination.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::market::DropReason;
    use crate::scoring::ScoreWeights;

    #[test]
    fn zero_counters_are_present_and_keys_sorted() {
        let mut report =
            RunReport::new(serde_json::json!({"weights": ScoreWeights::new(0.25, 0.75).unwrap()}));
        report.ingest.market = Some(IngestReport::new(
            DropReason::ALL.iter().map(|r| r.as_str()),
        ));
        let mut buf = Vec::new();
        write_report_json(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let dropped = v["ingest"]["market"]["dropped"].as_object().unwrap();
        assert_eq!(dropped.len(), DropReason::ALL.len());
        assert!(dropped.values().all(|n| n == 0));
        assert_eq!(v["config"]["weights"]["growth"], 0.25);
        assert_eq!(v["config"]["weights"]["resilience"], 0.75);
        assert!(v["summary"].is_null());

        let top: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
        assert!(text.find("\"aggregate\"").unwrap() < text.find("\"summary\"").unwrap());
    }
}
