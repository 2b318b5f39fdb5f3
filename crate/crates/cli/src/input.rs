//! Delimiter-separated input files.
//!
//! Every file has a header row. Blank lines and lines starting with `#` are
//! skipped. Numbers are plain decimal literals.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Raw bytes of an input file and their digest.
#[derive(Debug, Clone)]
pub struct InputFile {
    pub path: PathBuf,
    pub sha256: String,
    bytes: Vec<u8>,
}

impl InputFile {
    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = fs::read(path).map_err(|e| CliError::data(path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            sha256: hex_digest(&bytes),
            bytes,
        })
    }

    fn table(&self) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(self.bytes.as_slice());
        let header: Vec<String> = reader
            .headers()
            .map_err(|e| self.err(e))?
            .iter()
            .map(str::to_owned)
            .collect();
        if header.iter().all(String::is_empty) {
            return Err(self.err("missing header row"));
        }
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| self.err(e))?;
            let row = record
                .iter()
                .map(|field| {
                    field.parse::<f64>().map_err(|_| {
                        self.err(format!("row {}: `{field}` is not a number", i + 1))
                    })
                })
                .collect::<CliResult<Vec<f64>>>()?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(self.err(format!("row {}: non-finite value", i + 1)));
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(self.err("no data rows"));
        }
        Ok((header, rows))
    }

    fn err(&self, message: impl ToString) -> CliError {
        CliError::data(&self.path, message)
    }

    fn expect_last(&self, header: &[String], name: &str) -> CliResult<()> {
        if header.len() < 2 || header.last().map(String::as_str) != Some(name) {
            return Err(self.err(format!(
                "expected coordinate columns followed by `{name}`, found {header:?}"
            )));
        }
        Ok(())
    }

    /// Joint PMF rows: coordinate columns, then `probability`.
    pub fn histogram(&self) -> CliResult<(Vec<String>, Vec<(Vec<f64>, f64)>)> {
        let (header, rows) = self.table()?;
        self.expect_last(&header, "probability")?;
        let d = header.len() - 1;
        let rows = rows
            .into_iter()
            .map(|mut r| {
                let p = r.pop().unwrap_or_default();
                debug_assert_eq!(r.len(), d);
                (r, p)
            })
            .collect();
        Ok((header[..d].to_vec(), rows))
    }

    /// Raw QoS samples: coordinate columns only.
    pub fn samples(&self) -> CliResult<(Vec<String>, Vec<Vec<f64>>)> {
        let (header, rows) = self.table()?;
        if header.iter().any(|h| h == "probability") {
            return Err(self.err("sample files have no `probability` column"));
        }
        Ok((header, rows))
    }

    /// Individual ratings: coordinate columns, then an integer `rating`.
    pub fn ratings(&self) -> CliResult<Vec<(Vec<f64>, i32)>> {
        let (header, rows) = self.table()?;
        self.expect_last(&header, "rating")?;
        rows.into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                let v = r.pop().unwrap_or_default();
                if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
                    return Err(self.err(format!("row {}: rating {v} is not an integer", i + 1)));
                }
                Ok((r, v as i32))
            })
            .collect()
    }

    /// Two named numeric columns.
    pub fn pairs(&self, first: &str, second: &str) -> CliResult<Vec<(f64, f64)>> {
        let (header, rows) = self.table()?;
        if header != [first, second] {
            return Err(self.err(format!(
                "expected columns `{first},{second}`, found {header:?}"
            )));
        }
        Ok(rows.into_iter().map(|r| (r[0], r[1])).collect())
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
