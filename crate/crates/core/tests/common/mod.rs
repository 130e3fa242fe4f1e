#![allow(dead_code)]

use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> PathBuf {
    crate_dir().join("tests/fixtures").join(name)
}

/// The `koedds` binary, run from the crate root so fixture paths stay relative.
pub fn koedds<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_koedds"))
        .current_dir(crate_dir())
        .env_remove("KOEDDS_CONFIG")
        .args(args)
        .output()
        .expect("spawn koedds")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// `score` on the committed fixture, all three outputs into `dir`.
pub fn score_fixture(dir: &Path) -> Output {
    koedds([
        "score".as_ref(),
        "--market".as_ref(),
        "tests/fixtures/market.tsv".as_ref(),
        "--svi".as_ref(),
        "tests/fixtures/svi.csv".as_ref(),
        "--geojson".as_ref(),
        "tests/fixtures/counties.geojson".as_ref(),
        "--out-csv".as_ref(),
        dir.join("scores.csv").as_os_str(),
        "--out-geojson".as_ref(),
        dir.join("counties.geojson").as_os_str(),
        "--out-report".as_ref(),
        dir.join("report.json").as_os_str(),
    ])
}

/// Parsed JSON, with the report timestamp blanked when present.
pub fn canonical_json(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut v: Value =
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    if let Some(ts) = v.get_mut("generated_at") {
        *ts = Value::String(String::new());
    }
    v
}

/// Paths of every leaf that differs between `a` and `b`.
pub fn json_diff(a: &Value, b: &Value) -> Vec<String> {
    fn walk(a: &Value, b: &Value, path: String, out: &mut Vec<String>) {
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let keys: std::collections::BTreeSet<_> = x.keys().chain(y.keys()).collect();
                for k in keys {
                    let p = format!("{path}/{k}");
                    match (x.get(k), y.get(k)) {
                        (Some(u), Some(v)) => walk(u, v, p, out),
                        _ => out.push(p),
                    }
                }
            }
            (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
                for (i, (u, v)) in x.iter().zip(y).enumerate() {
                    walk(u, v, format!("{path}/{i}"), out);
                }
            }
            _ if a == b => {}
            _ => out.push(path),
        }
    }
    let mut out = Vec::new();
    walk(a, b, String::new(), &mut out);
    out
}

pub const MARKET_HEADER: &str = "period_begin\tperiod_end\tregion_type\tregion\tproperty_type\t\
median_sale_price\tmedian_sale_price_mom\tmedian_sale_price_yoy\thomes_sold\thomes_sold_mom\thomes_sold_yoy";

const STATES: [(&str, &str); 8] = [
    ("CO", "08"),
    ("IA", "19"),
    ("OH", "39"),
    ("TX", "48"),
    ("GA", "13"),
    ("WA", "53"),
    ("NY", "36"),
    ("CA", "06"),
];

fn synth_county(i: usize) -> (&'static str, &'static str, String) {
    let (st, fips) = STATES[i % STATES.len()];
    (st, fips, format!("Synth {i} County"))
}

/// What a generated market file contains.
#[derive(Debug, Clone, Copy)]
pub struct MarketShape {
    pub data_rows: u64,
    pub bad_rows: u64,
    pub bytes: u64,
}

/// Writes a market TSV of at least `target_bytes` spread over `counties`
/// synthetic counties, with one malformed row in every 1,000.
pub fn write_synthetic_market(path: &Path, target_bytes: u64, counties: usize) -> MarketShape {
    let file = std::fs::File::create(path).unwrap();
    let mut w = BufWriter::with_capacity(1 << 20, file);
    writeln!(w, "{MARKET_HEADER}").unwrap();
    let mut bytes = MARKET_HEADER.len() as u64 + 1;
    let (mut rows, mut bad) = (0u64, 0u64);
    while bytes < target_bytes {
        let i = rows as usize;
        let (st, _, name) = synth_county(i % counties);
        let month = (i / counties) % 12 + 1;
        let year = 2012 + (i / (counties * 12)) % 10;
        let line = if i % 1000 == 999 {
            bad += 1;
            format!("{year}-{month:02}-01\tnot-a-date\tcounty\t{name}, {st}\tAll Residential\t1\t0\t0\t1\t0\t0\n")
        } else {
            let g = ((i * 7919) % 4001) as f64 / 10_000.0 - 0.2;
            format!(
                "{year}-{month:02}-01\t{year}-{month:02}-28\tcounty\t{name}, {st}\tAll Residential\t\
                 {}\t{:.4}\t{:.4}\t{}\t{:.4}\t{:.4}\n",
                200_000 + i % 50_000,
                g / 12.0,
                g,
                100 + i % 900,
                -g / 3.0,
                g / 2.0
            )
        };
        w.write_all(line.as_bytes()).unwrap();
        bytes += line.len() as u64;
        rows += 1;
    }
    w.flush().unwrap();
    MarketShape {
        data_rows: rows,
        bad_rows: bad,
        bytes,
    }
}

/// SVI rows for the counties of [`write_synthetic_market`].
pub fn write_synthetic_svi(path: &Path, counties: usize) {
    let mut w = BufWriter::new(std::fs::File::create(path).unwrap());
    writeln!(w, "ST_ABBR,COUNTY,FIPS,RPL_THEMES").unwrap();
    for i in 0..counties {
        let (st, fips, name) = synth_county(i);
        let svi = ((i * 37) % 1000) as f64 / 1000.0;
        writeln!(w, "{st},{name},{fips}{:03},{svi}", i / STATES.len() + 1).unwrap();
    }
    w.flush().unwrap();
}
