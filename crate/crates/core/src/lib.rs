//! County-level real-estate investment scoring.
//!
//! The pipeline streams a Redfin-format county market tracker, averages
//! each county's monthly growth, joins it with the CDC Social Vulnerability
//! Index, and scores every county as a weighted average of min-max
//! normalized growth and resilience (`1 - SVI`). Results go to a CSV, to a
//! county GeoJSON FeatureCollection ready for choropleth viewers, and to a
//! JSON run report that also carries the SVI/growth Pearson correlation.
//!
//! | module        | role                                                    |
//! |---------------|---------------------------------------------------------|
//! | [`ingest`]    | streaming market TSV and SVI CSV readers                |
//! | [`geo_names`] | state FIPS crosswalk, county-name canonicalization      |
//! | [`aggregate`] | per-county means of monthly growth                      |
//! | [`scoring`]   | normalization, resilience, composite score, join        |
//! | [`stats`]     | Pearson correlation and summary statistics              |
//! | [`emit`]      | CSV, GeoJSON and report writers                         |
//! | [`cli`]       | `score` / `stats` / `validate` commands                 |
//!
//! Runnable walkthroughs of each stage live in the crate's `examples/`.

pub mod aggregate;
pub mod cli;
pub mod config;
pub mod emit;
pub mod error;
pub mod geo_names;
pub mod ingest;
pub mod pipeline;
pub mod scoring;
pub mod stats;

pub use aggregate::{aggregate_by_county, annual_growth, CountyAggregate, GrowthMetric};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use geo_names::{canonicalize_county_name, parse_region, CountyKey, StateCrosswalk};
pub use ingest::{
    parse_market_stream, parse_svi, IngestFilter, IngestReport, MarketRecord, SviRecord,
};
pub use scoring::{
    composite_score, min_max_normalize, resilience, score_counties, CountyScore, JoinReport,
    ScoreWeights,
};
pub use stats::{pearson, summarize, svi_growth_correlation, CorrelationResult};
