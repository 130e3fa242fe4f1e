//! CDC Social Vulnerability Index, county table (comma-separated).

use std::collections::HashSet;
use std::io::Read;

use csv::ByteRecord;

use super::IngestReport;
use crate::error::{Error, Result};
use crate::geo_names::{canonicalize_county_name, CountyKey, StateCrosswalk};

pub const FIPS_COLUMN: &str = "FIPS";
pub const STATE_COLUMN: &str = "ST_ABBR";
pub const COUNTY_COLUMN: &str = "COUNTY";
pub const OVERALL_COLUMN: &str = "RPL_THEMES";

/// CDC marks suppressed or unavailable estimates with this value.
pub const MISSING_SENTINEL: f64 = -999.0;

pub const DROP_REASONS: [&str; 8] = [
    "malformed_row",
    "invalid_fips",
    "unknown_state",
    "fips_state_mismatch",
    "invalid_name",
    "invalid_svi_value",
    "svi_missing_sentinel",
    "svi_out_of_range",
];

/// Overall (all themes) vulnerability percentile for one county.
#[derive(Debug, Clone, PartialEq)]
pub struct SviRecord {
    pub county_fips: String,
    pub key: CountyKey,
    pub svi_overall: f64,
}

/// Parses an SVI county CSV against the bundled state crosswalk.
pub fn parse_svi<R: Read>(stream: R) -> Result<(Vec<SviRecord>, IngestReport)> {
    parse_svi_with(stream, StateCrosswalk::bundled())
}

/// Parses an SVI county CSV. Only the overall percentile is read; theme
/// columns are ignored. A repeated county FIPS is fatal.
pub fn parse_svi_with<R: Read>(
    stream: R,
    xwalk: &StateCrosswalk,
) -> Result<(Vec<SviRecord>, IngestReport)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(stream);

    let mut header = ByteRecord::new();
    if !reader.read_byte_record(&mut header)? {
        return Err(Error::Format("SVI file is empty (no header row)".into()));
    }
    let names: Vec<String> = header
        .iter()
        .map(|h| {
            String::from_utf8_lossy(h)
                .trim_start_matches('\u{feff}')
                .trim()
                .to_string()
        })
        .collect();
    let position = |wanted: &str| names.iter().position(|h| h == wanted);
    let required = [FIPS_COLUMN, STATE_COLUMN, COUNTY_COLUMN, OVERALL_COLUMN];
    let missing: Vec<String> = required
        .iter()
        .filter(|c| position(c).is_none())
        .map(|c| c.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingColumns(missing));
    }
    for (i, name) in names.iter().enumerate() {
        if required.contains(&name.as_str()) && names[..i].contains(name) {
            return Err(Error::DuplicateColumn(name.clone()));
        }
    }
    let [fips_ix, state_ix, county_ix, svi_ix] = required.map(|c| position(c).unwrap());

    let mut report = IngestReport::new(DROP_REASONS);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut row = ByteRecord::new();
    while reader.read_byte_record(&mut row)? {
        if row.len() != names.len() {
            report.drop_row("malformed_row");
            continue;
        }
        let cell = |ix: usize| {
            row.get(ix)
                .and_then(|b| std::str::from_utf8(b).ok())
                .map(str::trim)
        };
        let (Some(fips), Some(state), Some(county), Some(value)) =
            (cell(fips_ix), cell(state_ix), cell(county_ix), cell(svi_ix))
        else {
            report.drop_row("malformed_row");
            continue;
        };
        match decode_row(fips, state, county, value, xwalk) {
            Ok(rec) => {
                if !seen.insert(rec.county_fips.clone()) {
                    return Err(Error::DuplicateFips(rec.county_fips));
                }
                report.keep();
                out.push(rec);
            }
            Err(reason) => report.drop_row(reason),
        }
    }
    Ok((out, report))
}

fn decode_row(
    fips: &str,
    state: &str,
    county: &str,
    value: &str,
    xwalk: &StateCrosswalk,
) -> std::result::Result<SviRecord, &'static str> {
    // Spreadsheet round-trips lose the leading zero of states 01-09.
    let county_fips = if fips.len() == 4 {
        format!("0{fips}")
    } else {
        fips.to_string()
    };
    if county_fips.len() != 5 || !county_fips.bytes().all(|b| b.is_ascii_digit()) {
        return Err("invalid_fips");
    }
    let state_fips = xwalk
        .state_code_to_fips(state)
        .map_err(|_| "unknown_state")?;
    if state_fips != &county_fips[..2] {
        return Err("fips_state_mismatch");
    }
    let county_name = canonicalize_county_name(county).map_err(|_| "invalid_name")?;
    let svi: f64 = value.parse().map_err(|_| "invalid_svi_value")?;
    if svi.is_nan() {
        return Err("invalid_svi_value");
    }
    if svi == MISSING_SENTINEL {
        return Err("svi_missing_sentinel");
    }
    if !(0.0..=1.0).contains(&svi) {
        return Err("svi_out_of_range");
    }
    Ok(SviRecord {
        key: CountyKey {
            state_fips: state_fips.to_string(),
            county_name,
        },
        county_fips,
        svi_overall: svi,
    })
}
