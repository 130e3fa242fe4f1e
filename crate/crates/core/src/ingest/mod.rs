//! Streaming readers for the two input tables.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use serde::Serialize;

use crate::error::{Error, Result};

pub mod market;
pub mod svi;

pub use market::{
    column_map, parse_market_stream, ColumnMap, IngestFilter, MarketReader, MarketRecord,
};
pub use svi::{parse_svi, SviRecord};

const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

/// Row accounting for one input file.
///
/// Every reason the reader can drop a row is present in `dropped` from the
/// start, so serialized reports have a stable shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub source: Option<String>,
    pub rows_read: u64,
    pub rows_kept: u64,
    pub dropped: BTreeMap<String, u64>,
}

impl IngestReport {
    pub fn new<'a>(reasons: impl IntoIterator<Item = &'a str>) -> Self {
        IngestReport {
            source: None,
            rows_read: 0,
            rows_kept: 0,
            dropped: reasons.into_iter().map(|r| (r.to_string(), 0)).collect(),
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub(crate) fn keep(&mut self) {
        self.rows_read += 1;
        self.rows_kept += 1;
    }

    pub(crate) fn drop_row(&mut self, reason: &str) {
        self.rows_read += 1;
        *self.dropped.entry(reason.to_string()).or_insert(0) += 1;
    }

    pub fn rows_dropped(&self) -> u64 {
        self.dropped.values().sum()
    }

    /// `rows_read == rows_kept + Σ dropped`.
    pub fn is_balanced(&self) -> bool {
        self.rows_read == self.rows_kept + self.rows_dropped()
    }

    /// Sums the counters of a report over a disjoint chunk of the same file.
    pub fn merge(&mut self, other: &IngestReport) {
        self.rows_read += other.rows_read;
        self.rows_kept += other.rows_kept;
        for (reason, n) in &other.dropped {
            *self.dropped.entry(reason.clone()).or_insert(0) += n;
        }
    }
}

/// Wraps a reader, transparently decompressing gzip input detected by its
/// magic bytes.
pub fn decompressing_reader<R: Read + 'static>(reader: R) -> Result<Box<dyn Read>> {
    let mut buffered = BufReader::with_capacity(1 << 16, reader);
    let head = buffered.fill_buf()?;
    if head.starts_with(&GZIP_MAGIC) {
        Ok(Box::new(MultiGzDecoder::new(buffered)))
    } else {
        Ok(Box::new(buffered))
    }
}

/// Opens a local file for streaming, decompressing if needed.
pub fn open_input(path: &Path) -> Result<Box<dyn Read>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    decompressing_reader(file).map_err(|e| match e {
        Error::Stream(source) => Error::io(path, source),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use flate2::write::GzEncoder;
    use flate2::Compression;
    use std::io::{Cursor, Write};

    #[test]
    fn gzip_is_sniffed() {
        let mut enc = GzEncoder::new(Vec::new(), Compression::fast());
        enc.write_all(b"hello\tworld\n").unwrap();
        let gz = enc.finish().unwrap();
        let mut out = String::new();
        decompressing_reader(Cursor::new(gz))
            .unwrap()
            .read_to_string(&mut out)
            .unwrap();
        assert_eq!(out, "hello\tworld\n");

        let mut out = String::new();
        decompressing_reader(Cursor::new(b"plain".to_vec()))
            .unwrap()
            .read_to_string(&mut out)
            .unwrap();
        assert_eq!(out, "plain");
    }

    #[test]
    fn report_merge_and_balance() {
        let mut a = IngestReport::new(["x", "y"]);
        a.keep();
        a.drop_row("x");
        let mut b = IngestReport::new(["x", "y"]);
        b.drop_row("y");
        b.keep();
        a.merge(&b);
        assert_eq!((a.rows_read, a.rows_kept, a.rows_dropped()), (4, 2, 2));
        assert!(a.is_balanced());
    }

    #[test]
    fn missing_file_names_the_path() {
        let err = open_input(Path::new("/nonexistent/market.tsv"))
            .err()
            .expect("missing file");
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("/nonexistent/market.tsv"));
    }
}
