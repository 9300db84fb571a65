//! Output files: CSV/JSON tables, binary snapshots and the run manifest.
//!
//! Numbers are written in Rust's shortest round-trip form, so reruns of the
//! same configuration produce byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use bo_spectral::{RealField, Snapshot};
use serde::Serialize;

use crate::config::OutputConfig;
use crate::error::RunError;

/// A rectangular numeric table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    /// Column names.
    pub columns: Vec<String>,
    /// Rows, each as long as `columns`.
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// An empty table with the given columns.
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row.
    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Formats a number for CSV: plain decimal for moderate magnitudes,
/// scientific otherwise; both are shortest round-trip representations.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Writes the enabled formats of each report into one directory and keeps
/// the list of files written.
#[derive(Debug)]
pub struct Sink {
    dir: PathBuf,
    formats: OutputConfig,
    files: Vec<String>,
}

impl Sink {
    /// Creates the directory if needed.
    pub fn new(dir: &Path, formats: &OutputConfig) -> Result<Self, RunError> {
        fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
        Ok(Sink {
            dir: dir.to_path_buf(),
            formats: formats.clone(),
            files: Vec::new(),
        })
    }

    /// The output directory.
    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Files written so far, relative to the directory.
    pub fn files(&self) -> &[String] {
        &self.files
    }

    /// Writes `<name>.csv` and/or `<name>.json`.
    pub fn table(&mut self, name: &str, table: &Table) -> Result<(), RunError> {
        if self.formats.has("csv") {
            let path = self.dir.join(format!("{name}.csv"));
            let mut w = csv::Writer::from_path(&path).map_err(|e| RunError::Csv(path.display().to_string(), e))?;
            let wrap = |e| RunError::Csv(path.display().to_string(), e);
            w.write_record(&table.columns).map_err(wrap)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|v| format_number(*v))).map_err(wrap)?;
            }
            w.flush().map_err(|e| RunError::io(&path, e))?;
            self.files.push(format!("{name}.csv"));
        }
        if self.formats.has("json") {
            self.json(name, table)?;
        }
        Ok(())
    }

    /// Writes `<name>.json` (pretty-printed) when JSON output is enabled.
    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), RunError> {
        if self.formats.has("json") {
            self.write_json(&format!("{name}.json"), value)?;
        }
        Ok(())
    }

    /// Writes a JSON file regardless of the configured formats.
    pub fn write_json<T: Serialize>(&mut self, file: &str, value: &T) -> Result<(), RunError> {
        let path = self.dir.join(file);
        let mut text = serde_json::to_string_pretty(value).map_err(RunError::Json)?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| RunError::io(&path, e))?;
        self.files.push(file.to_string());
        Ok(())
    }

    /// Writes a text file regardless of the configured formats.
    pub fn write_text(&mut self, file: &str, text: &str) -> Result<(), RunError> {
        let path = self.dir.join(file);
        fs::write(&path, text).map_err(|e| RunError::io(&path, e))?;
        self.files.push(file.to_string());
        Ok(())
    }

    /// Writes `snapshots/<name>.bof1` when binary output is enabled.
    pub fn snapshot(&mut self, name: &str, field: &RealField, time: f64) -> Result<(), RunError> {
        if !self.formats.has("bof1") {
            return Ok(());
        }
        let dir = self.dir.join("snapshots");
        fs::create_dir_all(&dir).map_err(|e| RunError::io(&dir, e))?;
        let path = dir.join(format!("{name}.bof1"));
        let file = fs::File::create(&path).map_err(|e| RunError::io(&path, e))?;
        Snapshot::from_real(field, time).write_to(std::io::BufWriter::new(file))?;
        self.files.push(format!("snapshots/{name}.bof1"));
        Ok(())
    }
}
