//! In-memory output sets written to disk only once complete.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::error::{CliError, Result};

#[derive(Debug, Default)]
pub struct OutputSet {
    files: Vec<(String, Vec<u8>)>,
}

impl OutputSet {
    pub fn add(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.to_string(), bytes));
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) {
        let mut text = serde_json::to_vec_pretty(value).expect("output serializes");
        text.push(b'\n');
        self.add(name, text);
    }

    pub fn names(&self) -> Vec<String> {
        self.files.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Writes every file into `dir`, each through a temporary file renamed
    /// into place, so readers never see a half-written file.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", dir.display())))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, bytes) in &self.files {
            let target = dir.join(name);
            let fail = |e: &dyn std::fmt::Display| CliError::runtime(format!("cannot write {}: {e}", target.display()));
            let mut tmp = NamedTempFile::new_in(dir).map_err(|e| fail(&e))?;
            tmp.write_all(bytes).map_err(|e| fail(&e))?;
            tmp.as_file().sync_all().map_err(|e| fail(&e))?;
            tmp.persist(&target).map_err(|e| fail(&e.error))?;
            written.push(target);
        }
        Ok(written)
    }
}

/// Renders rows to CSV bytes.
pub fn csv_bytes(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Shortest round-trip decimal form; infinities as `inf`.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x}")
    }
}
