//! Command-line front end shared by the `koedds` binary and the examples.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{ConfigLayer, RunConfig, CONFIG_ENV};
use crate::error::Result;
use crate::pipeline;

#[derive(Debug, Parser)]
#[command(
    name = "koedds",
    version,
    about = "Score U.S. counties for real-estate investment potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ingest, aggregate, join, score and write CSV / GeoJSON / report.
    Score(Flags),
    /// Correlation between SVI and average annual growth.
    Stats(Flags),
    /// Check input files without producing outputs.
    Validate(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Redfin-format county market tracker (TSV, optionally gzip).
    #[arg(long, value_name = "PATH")]
    pub market: Option<PathBuf>,
    /// CDC SVI county table (CSV).
    #[arg(long, value_name = "PATH")]
    pub svi: Option<PathBuf>,
    /// County FeatureCollection with STATE and NAME properties.
    #[arg(long, value_name = "PATH")]
    pub geojson: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out_csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out_geojson: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out_report: Option<PathBuf>,
    /// Growth and resilience weights, summing to 1.
    #[arg(long, value_name = "G,R")]
    pub weights: Option<String>,
    /// Keep only rows of this property type [default: All Residential].
    #[arg(long, value_name = "STR")]
    pub property_type: Option<String>,
    /// Drop counties with fewer monthly observations [default: 12].
    #[arg(long, value_name = "N")]
    pub min_months: Option<String>,
    /// Inject the plain score into GeoJSON instead of 1 - score.
    #[arg(long)]
    pub no_viz_invert: bool,
    /// GeoJSON property receiving the score [default: investment_score].
    #[arg(long, value_name = "NAME")]
    pub score_property: Option<String>,
    /// Flat key = value config file; flags override it.
    #[arg(long, value_name = "PATH", env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

impl Flags {
    pub fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            market: self.market.clone(),
            svi: self.svi.clone(),
            geojson: self.geojson.clone(),
            out_csv: self.out_csv.clone(),
            out_geojson: self.out_geojson.clone(),
            out_report: self.out_report.clone(),
            weights: self.weights.clone(),
            property_type: self.property_type.clone(),
            min_months: self.min_months.clone(),
            no_viz_invert: self.no_viz_invert.then_some(true),
            score_property: self.score_property.clone(),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let file = self.config.as_deref().map(ConfigLayer::load).transpose()?;
        RunConfig::resolve(self.layer(), file)
    }
}

/// Runs one parsed command, printing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Score(flags) => pipeline::cmd_score(&flags.resolve()?, out).map(drop),
        Command::Stats(flags) => pipeline::cmd_stats(&flags.resolve()?, out).map(drop),
        Command::Validate(flags) => pipeline::cmd_validate(&flags.resolve()?, out).map(drop),
    }
}

/// Parses `args`, runs, and returns the process exit status. Errors go to
/// stderr as a single line.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("koedds: error: {e}");
            e.exit_code()
        }
    }
}
