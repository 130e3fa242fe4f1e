//! Monthly rows to per-county average growth, split across two
//! aggregators and merged, as a parallel reader would.
//!
//!     cargo run --example aggregate_growth -- [MARKET.tsv] [MIN_MONTHS]

use std::path::PathBuf;

use koedds::aggregate::{filter_min_months, CountyAggregator};
use koedds::ingest::{open_input, MarketReader};
use koedds::{annual_growth, IngestFilter, StateCrosswalk};

fn main() -> koedds::Result<()> {
    let mut args = std::env::args_os().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/market.tsv")
    });
    let min_months: u32 = args
        .next()
        .and_then(|s| s.to_str()?.parse().ok())
        .unwrap_or(12);

    let xwalk = StateCrosswalk::bundled();
    let (mut even, mut odd) = (CountyAggregator::new(xwalk), CountyAggregator::new(xwalk));
    let reader = MarketReader::new(open_input(&path)?, IngestFilter::default())?;
    for (i, rec) in reader.enumerate() {
        let rec = rec?;
        if i % 2 == 0 {
            even.push(&rec)
        } else {
            odd.push(&rec)
        }
    }
    even.merge(odd);
    let (aggs, mut report) = even.finish();
    let aggs = filter_min_months(aggs, min_months, &mut report);

    println!(
        "{} records, {} counties, {} below {min_months} months",
        report.records_in, report.counties, report.below_min_months
    );
    for a in &aggs {
        println!(
            "  {:<24} {:>3} months  avg annual growth {:>7.3}%",
            a.key.to_string(),
            a.n_months,
            100.0 * annual_growth(a)
        );
    }
    Ok(())
}
