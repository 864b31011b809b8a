//! Artifact output: CSV tables with round-trip float formatting and pretty
//! JSON, written into one directory per run.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::Result;

/// Environment variable naming the default output root.
pub const OUTPUT_ROOT_VAR: &str = "PAM_OUTPUT_ROOT";

/// `x` with 17 significant digits, which round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// The directory a run writes into.
#[derive(Clone, Debug)]
pub struct OutputDir {
    path: PathBuf,
}

impl OutputDir {
    pub fn create(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        fs::create_dir_all(&path)?;
        Ok(OutputDir { path })
    }

    /// `$PAM_OUTPUT_ROOT/<name>`, or `pam-out/<name>` when the variable is unset.
    pub fn default_for(name: &str) -> PathBuf {
        let root = std::env::var_os(OUTPUT_ROOT_VAR).map_or_else(|| PathBuf::from("pam-out"), PathBuf::from);
        root.join(name)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn write_json<T: Serialize + ?Sized>(&self, name: &str, value: &T) -> Result<PathBuf> {
        let p = self.path.join(name);
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        fs::write(&p, s)?;
        Ok(p)
    }

    /// Header row then one record per row; LF line endings.
    pub fn write_csv<I, R>(&self, name: &str, header: &[&str], rows: I) -> Result<PathBuf>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let p = self.path.join(name);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(&p)?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(p)
    }
}
