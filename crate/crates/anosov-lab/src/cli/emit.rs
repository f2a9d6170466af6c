//! CSV and report emission: metadata headers, 17-significant-digit
//! floats, deterministic bytes for identical configs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;

/// FNV-1a content hash used to key caches and stamp artifacts.
pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    buf: String,
    path: PathBuf,
}

impl CsvWriter {
    pub fn new(path: impl AsRef<Path>, meta: &[(&str, String)], header: &str) -> CsvWriter {
        let mut buf = String::new();
        for (k, v) in meta {
            writeln!(buf, "# {k} {v}").unwrap();
        }
        writeln!(buf, "{header}").unwrap();
        CsvWriter {
            buf,
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        writeln!(self.buf, "{}", fields.join(",")).unwrap();
    }

    pub fn finish(self) -> Result<PathBuf> {
        write_atomic(&self.path, self.buf.as_bytes())?;
        Ok(self.path)
    }
}

/// Write-temp-rename so partial artifacts never appear.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
