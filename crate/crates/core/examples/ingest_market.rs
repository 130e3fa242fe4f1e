//! Stream a market tracker file and print the drop counters.
//!
//!     cargo run --example ingest_market -- [MARKET.tsv[.gz]]

use std::path::PathBuf;

use koedds::ingest::{open_input, MarketReader};
use koedds::IngestFilter;

fn main() -> koedds::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/market.tsv")
        });

    let mut reader = MarketReader::new(open_input(&path)?, IngestFilter::default())?;
    let mut first = None;
    for rec in reader.by_ref() {
        first.get_or_insert(rec?);
    }
    let report = reader.into_report();

    println!(
        "{}: read {} kept {}",
        path.display(),
        report.rows_read,
        report.rows_kept
    );
    for (reason, n) in &report.dropped {
        println!("  {reason:<24} {n}");
    }
    if let Some(r) = first {
        println!(
            "first kept row: {} {} yoy={}",
            r.period_end, r.region, r.median_sale_price_yoy
        );
    }
    Ok(())
}
