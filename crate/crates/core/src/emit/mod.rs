//! Output writers: scored CSV, augmented GeoJSON and the JSON run report.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};

pub mod csv_out;
pub mod geojson;
pub mod report;

pub use csv_out::{write_aggregates_csv, write_scores_csv, SCORES_HEADER};
pub use geojson::{
    augment_geojson, validate_geojson, GeoJsonOptions, MatchReport, UnmatchedFeature,
};
pub use report::{write_report_json, RunReport};

/// Writes `path` via a temporary sibling file and a rename, so readers see
/// either the old file, no file, or the complete new one.
pub fn write_atomic<T, F>(path: &Path, body: F) -> Result<T>
where
    F: FnOnce(&mut dyn Write) -> Result<T>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !dir.exists() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let tmp = NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = BufWriter::new(tmp);
    let value = body(&mut out).map_err(|e| match e {
        Error::Stream(source) => Error::io(path, source),
        other => other,
    })?;
    let tmp = out
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_leaves_no_file_on_failure() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("out.csv");
        let res: Result<()> = write_atomic(&target, |w| {
            w.write_all(b"partial")?;
            Err(Error::EmptyJoin)
        });
        assert!(res.is_err());
        assert!(!target.exists());
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);

        write_atomic(&target, |w| Ok(w.write_all(b"done")?)).unwrap();
        assert_eq!(fs::read_to_string(&target).unwrap(), "done");
    }
}
