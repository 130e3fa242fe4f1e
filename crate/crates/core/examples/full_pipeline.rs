//! The `score` command driven from code: resolve a configuration, run,
//! and write all three outputs to a directory.
//!
//!     cargo run --example full_pipeline -- [OUT_DIR]

use std::path::PathBuf;

use koedds::config::{ConfigLayer, RunConfig};
use koedds::pipeline::cmd_score;

fn main() -> koedds::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let out_dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("koedds-example"));
    std::fs::create_dir_all(&out_dir).map_err(|e| koedds::Error::io(&out_dir, e))?;

    let file = ConfigLayer::parse(&format!(
        "market = {}\nsvi = {}\ngeojson = {}\nweights = 0.6,0.4\n",
        fixtures.join("market.tsv").display(),
        fixtures.join("svi.csv").display(),
        fixtures.join("counties.geojson").display(),
    ))?;
    let flags = ConfigLayer {
        out_csv: Some(out_dir.join("scores.csv")),
        out_geojson: Some(out_dir.join("counties.geojson")),
        out_report: Some(out_dir.join("report.json")),
        ..ConfigLayer::default()
    };
    let config = RunConfig::resolve(flags, Some(file))?;

    let outcome = cmd_score(&config, &mut std::io::stdout())?;
    println!(
        "\nwrote {} rows and the report to {}",
        outcome.scores.len(),
        out_dir.display()
    );
    Ok(())
}
