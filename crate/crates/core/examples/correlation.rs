//! Pearson r between SVI and average annual growth for two input files.
//!
//!     cargo run --example correlation -- [MARKET.tsv] [SVI.csv]

use std::path::PathBuf;

use koedds::pipeline::{load_aggregates, load_svi};
use koedds::{pearson, svi_growth_correlation, IngestFilter, StateCrosswalk};

fn main() -> koedds::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let market = args.next().unwrap_or_else(|| fixtures.join("market.tsv"));
    let svi = args.next().unwrap_or_else(|| fixtures.join("svi.csv"));

    let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0])?;
    println!("toy: r = {} ({})", r.r, r.interpretation);

    let xwalk = StateCrosswalk::bundled();
    let (aggs, _, _) = load_aggregates(&market, IngestFilter::default(), 12, xwalk)?;
    let (svi, _) = load_svi(&svi, xwalk)?;
    let c = svi_growth_correlation(&aggs, &svi)?;
    println!(
        "svi vs growth: r = {:.4}, n = {}, {}",
        c.r, c.n, c.interpretation
    );
    Ok(())
}
