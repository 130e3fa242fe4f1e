//! County identity: state postal codes to FIPS, county-name canonicalization
//! and the join key shared by market rows, SVI rows and GeoJSON features.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

const BUNDLED_CROSSWALK: &str = include_str!("../data/state_fips.csv");

/// Suffix tokens removed from the end of county names.
const STRIPPED_SUFFIXES: [&str; 2] = [" county", " parish"];

/// Bijection between two-letter postal codes and two-digit state FIPS codes.
#[derive(Debug, Clone)]
pub struct StateCrosswalk {
    to_fips: HashMap<String, String>,
    to_postal: HashMap<String, String>,
    names: HashMap<String, String>,
}

impl StateCrosswalk {
    /// The 50 states plus DC, parsed once from the committed data file.
    pub fn bundled() -> &'static StateCrosswalk {
        static XWALK: OnceLock<StateCrosswalk> = OnceLock::new();
        XWALK.get_or_init(|| {
            StateCrosswalk::from_csv(BUNDLED_CROSSWALK.as_bytes())
                .expect("bundled state crosswalk is valid")
        })
    }

    /// Reads a `postal,fips,name` CSV. Rejects anything that is not a bijection.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let (Some(postal_ix), Some(fips_ix), Some(name_ix)) =
            (col("postal"), col("fips"), col("name"))
        else {
            let missing = ["postal", "fips", "name"]
                .into_iter()
                .filter(|n| col(n).is_none())
                .map(String::from)
                .collect();
            return Err(Error::MissingColumns(missing));
        };

        let mut xwalk = StateCrosswalk {
            to_fips: HashMap::new(),
            to_postal: HashMap::new(),
            names: HashMap::new(),
        };
        for row in rdr.records() {
            let row = row?;
            let postal = row.get(postal_ix).unwrap_or("").trim().to_ascii_uppercase();
            let fips = row.get(fips_ix).unwrap_or("").trim().to_string();
            let name = row.get(name_ix).unwrap_or("").trim().to_string();
            if postal.len() != 2 || !postal.bytes().all(|b| b.is_ascii_alphabetic()) {
                return Err(Error::Format(format!(
                    "bad postal code {postal:?} in crosswalk"
                )));
            }
            if fips.len() != 2 || !fips.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Format(format!(
                    "bad state FIPS {fips:?} in crosswalk"
                )));
            }
            if xwalk.to_fips.insert(postal.clone(), fips.clone()).is_some()
                || xwalk
                    .to_postal
                    .insert(fips.clone(), postal.clone())
                    .is_some()
            {
                return Err(Error::Format(format!(
                    "crosswalk is not a bijection at {postal}/{fips}"
                )));
            }
            xwalk.names.insert(fips, name);
        }
        Ok(xwalk)
    }

    pub fn len(&self) -> usize {
        self.to_fips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_fips.is_empty()
    }

    /// Case-insensitive postal code lookup: `"co"` and `"CO"` both give `"08"`.
    pub fn state_code_to_fips(&self, code: &str) -> Result<&str> {
        let code = code.trim();
        if code.len() == 2 && code.bytes().all(|b| b.is_ascii_alphabetic()) {
            if let Some(fips) = self.to_fips.get(&code.to_ascii_uppercase()) {
                return Ok(fips);
            }
        }
        Err(Error::UnknownState(code.to_string()))
    }

    pub fn fips_to_state_code(&self, fips: &str) -> Option<&str> {
        self.to_postal.get(fips).map(String::as_str)
    }

    pub fn state_name(&self, fips: &str) -> Option<&str> {
        self.names.get(fips).map(String::as_str)
    }

    pub fn contains_fips(&self, fips: &str) -> bool {
        self.to_postal.contains_key(fips)
    }

    /// All `(postal, fips)` pairs, sorted by FIPS.
    pub fn entries(&self) -> Vec<(&str, &str)> {
        let mut out: Vec<_> = self
            .to_postal
            .iter()
            .map(|(f, p)| (p.as_str(), f.as_str()))
            .collect();
        out.sort_by(|a, b| a.1.cmp(b.1));
        out
    }
}

/// Join key: state FIPS plus canonical county name.
///
/// Ordering is `(state_fips, county_name)`, which is the output order of
/// every per-county table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CountyKey {
    pub state_fips: String,
    #[serde(rename = "county")]
    pub county_name: String,
}

impl CountyKey {
    /// Builds a key, canonicalizing the name and checking the state against
    /// the crosswalk.
    pub fn new(state_fips: &str, county: &str, xwalk: &StateCrosswalk) -> Result<Self> {
        if !xwalk.contains_fips(state_fips) {
            return Err(Error::UnknownState(state_fips.to_string()));
        }
        Ok(CountyKey {
            state_fips: state_fips.to_string(),
            county_name: canonicalize_county_name(county)?,
        })
    }
}

impl fmt::Display for CountyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.state_fips, self.county_name)
    }
}

/// Trims, lowercases and removes trailing " county" / " parish" tokens.
///
/// Other suffixes ("city", "borough", "census area") are kept. Punctuation
/// and non-ASCII letters pass through untouched.
pub fn canonicalize_county_name(raw: &str) -> Result<String> {
    let mut name = raw.trim().to_lowercase();
    // Stripping runs to a fixed point so the function is idempotent.
    'strip: loop {
        for suffix in STRIPPED_SUFFIXES {
            if let Some(rest) = name.strip_suffix(suffix) {
                name = rest.trim_end().to_string();
                continue 'strip;
            }
        }
        break;
    }
    if name.is_empty() {
        return Err(Error::InvalidName(raw.to_string()));
    }
    Ok(name)
}

/// Why a region string could not become a [`CountyKey`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionError {
    NoStateSuffix,
    UnknownState,
    InvalidName,
}

impl RegionError {
    pub const ALL: [RegionError; 3] = [
        RegionError::NoStateSuffix,
        RegionError::UnknownState,
        RegionError::InvalidName,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionError::NoStateSuffix => "no_state_suffix",
            RegionError::UnknownState => "unknown_state",
            RegionError::InvalidName => "invalid_name",
        }
    }
}

/// Splits `"<name>, <ST>"` on the final comma into a [`CountyKey`].
pub fn parse_region(region: &str, xwalk: &StateCrosswalk) -> Result<CountyKey> {
    classify_region(region, xwalk).map_err(|_| Error::RegionParse(region.to_string()))
}

/// Same as [`parse_region`] but keeps the failure category for counting.
pub fn classify_region(
    region: &str,
    xwalk: &StateCrosswalk,
) -> std::result::Result<CountyKey, RegionError> {
    let (name, state) = region.rsplit_once(',').ok_or(RegionError::NoStateSuffix)?;
    let state_fips = xwalk
        .state_code_to_fips(state)
        .map_err(|_| RegionError::UnknownState)?;
    let county_name = canonicalize_county_name(name).map_err(|_| RegionError::InvalidName)?;
    Ok(CountyKey {
        state_fips: state_fips.to_string(),
        county_name,
    })
}

/// True iff the feature's state FIPS equals the key's and its name
/// canonicalizes to the key's county name.
pub fn key_matches_feature(key: &CountyKey, feature_state_fips: &str, feature_name: &str) -> bool {
    key.state_fips == feature_state_fips
        && canonicalize_county_name(feature_name).is_ok_and(|n| n == key.county_name)
}
