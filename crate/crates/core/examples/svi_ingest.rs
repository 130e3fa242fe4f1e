//! Parse a CDC SVI county table.
//!
//!     cargo run --example svi_ingest -- [SVI.csv]

use std::path::PathBuf;

use koedds::ingest::open_input;
use koedds::parse_svi;

fn main() -> koedds::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/svi.csv")
        });

    let (records, report) = parse_svi(open_input(&path)?)?;
    println!(
        "{}: read {} kept {}",
        path.display(),
        report.rows_read,
        report.rows_kept
    );
    for (reason, n) in report.dropped.iter().filter(|(_, n)| **n > 0) {
        println!("  dropped {reason}: {n}");
    }
    for r in records.iter().take(5) {
        println!(
            "  {} {:<20} svi {:.4}",
            r.county_fips, r.key.county_name, r.svi_overall
        );
    }
    Ok(())
}
