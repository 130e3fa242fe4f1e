mod common;

use std::io::{self, Read, Write};

use common::*;
use flate2::write::GzEncoder;
use koedds::ingest::MarketReader;
use koedds::{IngestFilter, IngestReport, MarketRecord};
use proptest::prelude::*;

/// Hands out at most `chunk` bytes per read.
struct Trickle<R> {
    inner: R,
    chunk: usize,
}

impl<R: Read> Read for Trickle<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = buf.len().min(self.chunk);
        self.inner.read(&mut buf[..n])
    }
}

fn read_all<R: Read>(stream: R) -> (Vec<MarketRecord>, IngestReport) {
    let mut reader = MarketReader::new(stream, IngestFilter::default()).unwrap();
    let recs: Vec<_> = reader.by_ref().map(Result::unwrap).collect();
    (recs, reader.into_report())
}

fn fixture_bytes() -> Vec<u8> {
    std::fs::read(fixture("market.tsv")).unwrap()
}

#[test]
fn chunk_size_does_not_matter() {
    let bytes = fixture_bytes();
    let whole = read_all(&bytes[..]);
    for chunk in [1, 2, 7, 64, 4096] {
        let trickled = read_all(Trickle {
            inner: &bytes[..],
            chunk,
        });
        assert_eq!(trickled, whole, "chunk {chunk}");
    }
}

#[test]
fn gzip_input_is_equivalent() {
    let bytes = fixture_bytes();
    let mut gz = GzEncoder::new(Vec::new(), flate2::Compression::default());
    gz.write_all(&bytes).unwrap();
    let compressed = gz.finish().unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("market.tsv.gz");
    std::fs::write(&path, compressed).unwrap();
    let via_file = read_all(koedds::ingest::open_input(&path).unwrap());
    assert_eq!(via_file, read_all(&bytes[..]));
}

fn permute_columns(text: &str, order: &[usize]) -> String {
    let mut out = String::new();
    for line in text.lines() {
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != order.len() {
            out.push_str(line);
        } else {
            let moved: Vec<&str> = order.iter().map(|&i| cells[i]).collect();
            out.push_str(&moved.join("\t"));
        }
        out.push('\n');
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn column_order_is_irrelevant(order in Just((0..11).collect::<Vec<usize>>()).prop_shuffle()) {
        let mut text = String::from(MARKET_HEADER);
        text.push('\n');
        text.push_str("2021-01-01\t2021-01-31\tcounty\tAdams County, CO\tAll Residential\t1\t0.01\t0.1\t5\t0.2\t-0.3\n");
        text.push_str("2021-02-01\t2021-02-28\tcounty\tPolk County, IA\tCondo/Co-op\t1\t0.01\t0.1\t5\t0.2\t-0.3\n");
        text.push_str("2021-03-01\t2021-03-31\tcounty\tPolk County, IA\tAll Residential\t1\tNA\t0.1\t5\t0.2\t-0.3\n");
        let base = read_all(text.as_bytes());
        let shuffled = permute_columns(&text, &order);
        prop_assert_eq!(read_all(shuffled.as_bytes()), base);
    }

    // rows_read == rows_kept + dropped for arbitrary junk
    #[test]
    fn every_row_is_accounted_for(rows in prop::collection::vec(
        prop::collection::vec(prop_oneof![
            Just("".to_string()),
            Just("county".to_string()),
            Just("All Residential".to_string()),
            Just("2021-01-31".to_string()),
            Just("Adams County, CO".to_string()),
            Just("0.1".to_string()),
            Just("NA".to_string()),
            "[a-z0-9.,-]{0,8}",
        ], 0..14),
        0..60,
    )) {
        let mut text = String::from(MARKET_HEADER);
        text.push('\n');
        for r in &rows {
            text.push_str(&r.join("\t"));
            text.push('\n');
        }
        let (recs, report) = read_all(text.as_bytes());
        prop_assert!(report.is_balanced());
        prop_assert_eq!(report.rows_kept, recs.len() as u64);
        let non_blank = rows.iter().filter(|r| !r.join("\t").is_empty()).count();
        prop_assert_eq!(report.rows_read, non_blank as u64);
    }
}

#[test]
fn synthetic_file_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.tsv");
    let shape = write_synthetic_market(&path, 300_000, 50);
    let (recs, report) = read_all(std::fs::File::open(&path).unwrap());
    assert_eq!(report.rows_read, shape.data_rows);
    assert_eq!(report.rows_kept, shape.data_rows - shape.bad_rows);
    assert_eq!(report.dropped["invalid_date"], shape.bad_rows);
    assert_eq!(recs.len() as u64, report.rows_kept);
}
