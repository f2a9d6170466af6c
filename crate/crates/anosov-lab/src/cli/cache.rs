//! On-disk cache of enumerated ball spectra: flat binary keyed by the
//! content hash of (presentation text, representation matrices, depth).

use std::fs;
use std::path::{Path, PathBuf};

use super::emit::{fnv64, write_atomic};
use crate::error::{LabError, Result};
use crate::group::{ball, Presentation, Word, DEFAULT_ELEMENT_CAP};
use crate::replin::{Evaluator, Representation, SpectrumSample};

const MAGIC: &[u8; 6] = b"ALAB1\0";

pub fn cache_key(pres_text: &str, rep: &Representation, depth: usize) -> u64 {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(pres_text.as_bytes());
    for s in 0..rep.num_symbols() as u8 {
        for v in rep.generator(s).iter() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
    }
    bytes.extend_from_slice(&(depth as u64).to_le_bytes());
    fnv64(&bytes)
}

fn cache_path(dir: &Path, key: u64) -> PathBuf {
    dir.join(format!("ball-{key:016x}.bin"))
}

fn encode(records: &[(Word, SpectrumSample)], key: u64, depth: usize, d: usize) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&key.to_le_bytes());
    out.extend_from_slice(&(depth as u64).to_le_bytes());
    out.extend_from_slice(&(d as u64).to_le_bytes());
    out.extend_from_slice(&(records.len() as u64).to_le_bytes());
    for (w, s) in records {
        out.push(w.len() as u8);
        out.extend_from_slice(w.letters());
        for &x in &s.cartan {
            out.extend_from_slice(&x.to_le_bytes());
        }
        for &x in &s.jordan {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    out
}

fn decode(bytes: &[u8], key: u64) -> Option<Vec<(Word, SpectrumSample)>> {
    let mut p = 0usize;
    let take = |p: &mut usize, n: usize| -> Option<&[u8]> {
        if *p + n > bytes.len() {
            return None;
        }
        let s = &bytes[*p..*p + n];
        *p += n;
        Some(s)
    };
    if take(&mut p, 6)? != MAGIC {
        return None;
    }
    let k = u64::from_le_bytes(take(&mut p, 8)?.try_into().ok()?);
    if k != key {
        return None;
    }
    let _depth = u64::from_le_bytes(take(&mut p, 8)?.try_into().ok()?);
    let d = u64::from_le_bytes(take(&mut p, 8)?.try_into().ok()?) as usize;
    let count = u64::from_le_bytes(take(&mut p, 8)?.try_into().ok()?) as usize;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let len = take(&mut p, 1)?[0] as usize;
        let letters = take(&mut p, len)?.to_vec();
        let mut cartan = Vec::with_capacity(d);
        for _ in 0..d {
            cartan.push(f64::from_le_bytes(take(&mut p, 8)?.try_into().ok()?));
        }
        let mut jordan = Vec::with_capacity(d);
        for _ in 0..d {
            jordan.push(f64::from_le_bytes(take(&mut p, 8)?.try_into().ok()?));
        }
        let w = Word(letters);
        out.push((
            w.clone(),
            SpectrumSample {
                word: Some(w),
                len,
                cartan,
                jordan,
            },
        ));
    }
    Some(out)
}

/// Ball spectra with disk reuse: loads when the content key matches,
/// otherwise enumerates, evaluates and persists atomically.
pub fn cached_ball_spectra(
    cache_dir: Option<&Path>,
    pres_text: &str,
    pres: &Presentation,
    rep: &Representation,
    depth: usize,
) -> Result<Vec<(Word, SpectrumSample)>> {
    let key = cache_key(pres_text, rep, depth);
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, key);
        if let Ok(bytes) = fs::read(&path) {
            if let Some(records) = decode(&bytes, key) {
                return Ok(records);
            }
        }
    }
    let words = ball(pres, depth, DEFAULT_ELEMENT_CAP)?;
    let mut ev = Evaluator::new(rep);
    let mut records = Vec::with_capacity(words.len());
    for w in words {
        let s = ev.spectrum(&w)?;
        records.push((w, s));
    }
    if let Some(dir) = cache_dir {
        let bytes = encode(&records, key, depth, rep.dim);
        write_atomic(&cache_path(dir, key), &bytes).map_err(|e| {
            LabError::Io(std::io::Error::other(format!("cache write: {e}")))
        })?;
    }
    Ok(records)
}
