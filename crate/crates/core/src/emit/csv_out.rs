use std::io::Write;

use crate::aggregate::CountyAggregate;
use crate::error::Result;
use crate::scoring::CountyScore;

pub const SCORES_HEADER: [&str; 8] = [
    "state_fips",
    "county",
    "growth_raw",
    "growth_norm",
    "svi",
    "resilience",
    "score",
    "score_viz",
];

fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

/// Writes scores in the given order with six-decimal numbers. Returns the
/// number of data rows.
pub fn write_scores_csv<W: Write>(scores: &[CountyScore], destination: W) -> Result<usize> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(destination);
    w.write_record(SCORES_HEADER)?;
    for s in scores {
        w.write_record([
            s.key.state_fips.clone(),
            s.key.county_name.clone(),
            fixed(s.growth_raw),
            fixed(s.growth_norm),
            fixed(s.svi),
            fixed(s.resilience),
            fixed(s.score),
            fixed(s.score_viz),
        ])?;
    }
    w.flush()?;
    Ok(scores.len())
}

/// Debug dump of the aggregation stage.
pub fn write_aggregates_csv<W: Write>(
    aggregates: &[CountyAggregate],
    destination: W,
) -> Result<usize> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(destination);
    w.write_record([
        "state_fips",
        "county",
        "n_months",
        "avg_price_yoy",
        "avg_price_mom",
        "avg_homes_sold_yoy",
        "avg_homes_sold_mom",
    ])?;
    for a in aggregates {
        w.write_record([
            a.key.state_fips.clone(),
            a.key.county_name.clone(),
            a.n_months.to_string(),
            fixed(a.avg_price_yoy),
            fixed(a.avg_price_mom),
            fixed(a.avg_homes_sold_yoy),
            fixed(a.avg_homes_sold_mom),
        ])?;
    }
    w.flush()?;
    Ok(aggregates.len())
}
