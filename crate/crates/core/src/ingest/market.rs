//! Redfin-format county market tracker (tab-separated, header first).
//!
//! The reader is a single forward pass: one reusable row buffer, no
//! look-ahead, so memory does not grow with file length. Columns are found
//! by header name; their order in the file does not matter.

use std::collections::HashSet;
use std::io::Read;

use chrono::NaiveDate;
use csv::ByteRecord;

use super::IngestReport;
use crate::error::{Error, Result};

/// Required header names, in [`MarketField`] order.
pub const REQUIRED_COLUMNS: [&str; 8] = [
    "period_begin",
    "period_end",
    "region",
    "property_type",
    "homes_sold_mom",
    "homes_sold_yoy",
    "median_sale_price_mom",
    "median_sale_price_yoy",
];

pub const REGION_TYPE_COLUMN: &str = "region_type";
pub const COUNTY_REGION_TYPE: &str = "county";
pub const DEFAULT_PROPERTY_TYPE: &str = "All Residential";

/// Cell values read as "no data" rather than as a malformed number.
const MISSING_TOKENS: [&str; 5] = ["", "NA", "N/A", "null", "NULL"];

/// Semantic columns of the market file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarketField {
    PeriodBegin,
    PeriodEnd,
    Region,
    PropertyType,
    HomesSoldMom,
    HomesSoldYoy,
    MedianSalePriceMom,
    MedianSalePriceYoy,
}

impl MarketField {
    pub const ALL: [MarketField; 8] = [
        MarketField::PeriodBegin,
        MarketField::PeriodEnd,
        MarketField::Region,
        MarketField::PropertyType,
        MarketField::HomesSoldMom,
        MarketField::HomesSoldYoy,
        MarketField::MedianSalePriceMom,
        MarketField::MedianSalePriceYoy,
    ];

    const GROWTH: [MarketField; 4] = [
        MarketField::HomesSoldMom,
        MarketField::HomesSoldYoy,
        MarketField::MedianSalePriceMom,
        MarketField::MedianSalePriceYoy,
    ];

    pub fn column_name(self) -> &'static str {
        REQUIRED_COLUMNS[self as usize]
    }
}

/// Why a market row was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropReason {
    MalformedRow,
    NotCounty,
    PropertyTypeMismatch,
    InvalidDate,
    InvertedPeriod,
    MissingGrowthField,
    InvalidGrowthField,
}

impl DropReason {
    pub const ALL: [DropReason; 7] = [
        DropReason::MalformedRow,
        DropReason::NotCounty,
        DropReason::PropertyTypeMismatch,
        DropReason::InvalidDate,
        DropReason::InvertedPeriod,
        DropReason::MissingGrowthField,
        DropReason::InvalidGrowthField,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::MalformedRow => "malformed_row",
            DropReason::NotCounty => "not_county",
            DropReason::PropertyTypeMismatch => "property_type_mismatch",
            DropReason::InvalidDate => "invalid_date",
            DropReason::InvertedPeriod => "inverted_period",
            DropReason::MissingGrowthField => "missing_growth_field",
            DropReason::InvalidGrowthField => "invalid_growth_field",
        }
    }
}

/// One monthly observation for one region. Growth values are fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketRecord {
    pub period_begin: NaiveDate,
    pub period_end: NaiveDate,
    pub region: String,
    pub property_type: String,
    pub homes_sold_mom: f64,
    pub homes_sold_yoy: f64,
    pub median_sale_price_mom: f64,
    pub median_sale_price_yoy: f64,
}

/// Row filter applied during ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestFilter {
    pub property_type: String,
}

impl Default for IngestFilter {
    fn default() -> Self {
        IngestFilter {
            property_type: DEFAULT_PROPERTY_TYPE.to_string(),
        }
    }
}

/// Header positions of the fields the pipeline reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMap {
    indexes: [usize; 8],
    region_type: Option<usize>,
    width: usize,
}

impl ColumnMap {
    pub fn index(&self, field: MarketField) -> usize {
        self.indexes[field as usize]
    }

    pub fn region_type(&self) -> Option<usize> {
        self.region_type
    }

    /// Number of columns in the header; data rows must match it.
    pub fn width(&self) -> usize {
        self.width
    }
}

/// Locates every required column by exact name.
///
/// All missing names are reported together. A repeated header name is an
/// error because a lookup by name would be ambiguous.
pub fn column_map<S: AsRef<str>>(header: &[S]) -> Result<ColumnMap> {
    let mut seen = HashSet::new();
    for name in header {
        if !seen.insert(name.as_ref()) {
            return Err(Error::DuplicateColumn(name.as_ref().to_string()));
        }
    }
    let position = |wanted: &str| header.iter().position(|h| h.as_ref() == wanted);

    let mut indexes = [0usize; 8];
    let mut missing = Vec::new();
    for field in MarketField::ALL {
        match position(field.column_name()) {
            Some(ix) => indexes[field as usize] = ix,
            None => missing.push(field.column_name().to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingColumns(missing));
    }
    Ok(ColumnMap {
        indexes,
        region_type: position(REGION_TYPE_COLUMN),
        width: header.len(),
    })
}

/// Streaming iterator over the kept rows of a market file.
///
/// Dropped rows only bump counters in [`MarketReader::report`]. The
/// iterator yields `Err` solely for I/O failures of the underlying stream.
pub struct MarketReader<R: Read> {
    reader: csv::Reader<R>,
    columns: ColumnMap,
    filter: IngestFilter,
    row: ByteRecord,
    report: IngestReport,
    failed: bool,
}

impl<R: Read> std::fmt::Debug for MarketReader<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MarketReader")
            .field("columns", &self.columns)
            .field("filter", &self.filter)
            .field("report", &self.report)
            .finish_non_exhaustive()
    }
}

/// Reads the header of `stream` and returns a reader over its data rows.
pub fn parse_market_stream<R: Read>(stream: R, filter: IngestFilter) -> Result<MarketReader<R>> {
    MarketReader::new(stream, filter)
}

impl<R: Read> MarketReader<R> {
    pub fn new(stream: R, filter: IngestFilter) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .has_headers(false)
            .flexible(true)
            .buffer_capacity(1 << 16)
            .from_reader(stream);

        let mut header = ByteRecord::new();
        if !reader.read_byte_record(&mut header)? {
            return Err(Error::Format("market file is empty (no header row)".into()));
        }
        let names = header
            .iter()
            .map(|h| {
                std::str::from_utf8(h)
                    .map(|s| s.trim_start_matches('\u{feff}').trim().to_string())
                    .map_err(|_| Error::Format("market header is not valid UTF-8".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let columns = column_map(&names)?;

        Ok(MarketReader {
            reader,
            columns,
            filter,
            row: ByteRecord::new(),
            report: IngestReport::new(DropReason::ALL.iter().map(|r| r.as_str())),
            failed: false,
        })
    }

    pub fn columns(&self) -> &ColumnMap {
        &self.columns
    }

    pub fn report(&self) -> &IngestReport {
        &self.report
    }

    pub fn into_report(self) -> IngestReport {
        self.report
    }

    fn decode_row(&self) -> std::result::Result<MarketRecord, DropReason> {
        let row = &self.row;
        if row.len() != self.columns.width() {
            return Err(DropReason::MalformedRow);
        }
        let cell = |ix: usize| -> std::result::Result<&str, DropReason> {
            row.get(ix)
                .and_then(|b| std::str::from_utf8(b).ok())
                .map(str::trim)
                .ok_or(DropReason::MalformedRow)
        };
        let field = |f: MarketField| cell(self.columns.index(f));

        if let Some(ix) = self.columns.region_type() {
            if cell(ix)? != COUNTY_REGION_TYPE {
                return Err(DropReason::NotCounty);
            }
        }
        let property_type = field(MarketField::PropertyType)?;
        if property_type != self.filter.property_type {
            return Err(DropReason::PropertyTypeMismatch);
        }

        let date = |f: MarketField| -> std::result::Result<NaiveDate, DropReason> {
            NaiveDate::parse_from_str(field(f)?, "%Y-%m-%d").map_err(|_| DropReason::InvalidDate)
        };
        let period_begin = date(MarketField::PeriodBegin)?;
        let period_end = date(MarketField::PeriodEnd)?;
        if period_begin > period_end {
            return Err(DropReason::InvertedPeriod);
        }

        let mut growth = [0.0f64; 4];
        for (slot, f) in growth.iter_mut().zip(MarketField::GROWTH) {
            *slot = parse_growth(field(f)?)?;
        }
        let [homes_sold_mom, homes_sold_yoy, median_sale_price_mom, median_sale_price_yoy] = growth;

        Ok(MarketRecord {
            period_begin,
            period_end,
            region: field(MarketField::Region)?.to_string(),
            property_type: property_type.to_string(),
            homes_sold_mom,
            homes_sold_yoy,
            median_sale_price_mom,
            median_sale_price_yoy,
        })
    }
}

fn parse_growth(cell: &str) -> std::result::Result<f64, DropReason> {
    if MISSING_TOKENS.contains(&cell) {
        return Err(DropReason::MissingGrowthField);
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(DropReason::InvalidGrowthField),
    }
}

impl<R: Read> Iterator for MarketReader<R> {
    type Item = Result<MarketRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            match self.reader.read_byte_record(&mut self.row) {
                Ok(false) => return None,
                Ok(true) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e.into()));
                }
            }
            match self.decode_row() {
                Ok(rec) => {
                    self.report.keep();
                    return Some(Ok(rec));
                }
                Err(reason) => self.report.drop_row(reason.as_str()),
            }
        }
    }
}
