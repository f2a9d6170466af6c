//! Cartan and Jordan projections.
//!
//! Partial sums a_1 + ... + a_k are read off as log top singular values
//! of the k-th compound matrix, and log eigenvalue moduli likewise as
//! compound spectral radii; the last partial sum is pinned to log|det| = 0.
//! Every quantity is therefore a TOP value of some product, which f64
//! resolves at full relative accuracy at any depth.

use nalgebra::DMatrix;

use super::matrix::{compound, NormalizedMatrix};
use crate::error::{LabError, Result};
use crate::group::Word;

/// Per-element spectral record: sorted log singular values (Cartan) and
/// log eigenvalue moduli (Jordan), both recentred to sum zero.
#[derive(Clone, Debug)]
pub struct SpectrumSample {
    pub word: Option<Word>,
    pub len: usize,
    pub cartan: Vec<f64>,
    pub jordan: Vec<f64>,
}

impl SpectrumSample {
    /// Simple root gap tau_i(a) = a_i - a_{i+1}, 1-based.
    pub fn tau_a(&self, i: usize) -> f64 {
        self.cartan[i - 1] - self.cartan[i]
    }

    pub fn tau_lambda(&self, i: usize) -> f64 {
        self.jordan[i - 1] - self.jordan[i]
    }

    pub fn dim(&self) -> usize {
        self.cartan.len()
    }
}

/// Log of the top singular value of a unit-Frobenius-norm matrix.
fn log_top_sv(m: &DMatrix<f64>) -> Result<f64> {
    let gram = m * m.transpose();
    let eig = gram.symmetric_eigenvalues();
    let top = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(top.is_finite() && top > 0.0) {
        return Err(LabError::NumericConvergence(
            "top singular value not positive".into(),
        ));
    }
    Ok(0.5 * top.ln())
}

/// Log of the spectral radius.
fn log_spectral_radius(m: &DMatrix<f64>) -> Result<f64> {
    let eig = m.clone().complex_eigenvalues();
    let top = eig.iter().map(|z| z.norm()).fold(f64::NEG_INFINITY, f64::max);
    if !(top.is_finite() && top > 0.0) {
        return Err(LabError::NumericConvergence(
            "spectral radius not positive".into(),
        ));
    }
    Ok(top.ln())
}

fn recentre(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
}

/// Spectrum from accumulated compound products. `comps[k-1]` must be the
/// normalized k-th compound of the element, k = 1..=d-1; `log_abs_det`
/// pins the last partial sum (0 for the unit-determinant representations
/// this crate evaluates).
pub fn spectrum_from_companions(
    d: usize,
    comps: &[NormalizedMatrix],
    log_abs_det: f64,
    word: Option<Word>,
    len: usize,
) -> Result<SpectrumSample> {
    debug_assert_eq!(comps.len(), d - 1);
    let mut s = vec![0.0; d + 1];
    let mut r = vec![0.0; d + 1];
    s[d] = log_abs_det;
    r[d] = log_abs_det;
    for k in 1..d {
        let c = &comps[k - 1];
        s[k] = log_top_sv(&c.m)? + c.log_scale;
        r[k] = log_spectral_radius(&c.m)? + c.log_scale;
    }
    let mut cartan: Vec<f64> = (0..d).map(|i| s[i + 1] - s[i]).collect();
    let mut jordan: Vec<f64> = (0..d).map(|i| r[i + 1] - r[i]).collect();
    recentre(&mut cartan);
    recentre(&mut jordan);
    // jordan moduli sorted descending up to compound bookkeeping noise
    jordan.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(SpectrumSample {
        word,
        len,
        cartan,
        jordan,
    })
}

/// Spectrum of a single scale-tracked matrix. Companions are formed
/// directly from the stored matrix; fine for moderate gaps (tau up to
/// ~30), while ball/ray pipelines use the accumulated-companion path.
pub fn spectral(nm: &NormalizedMatrix) -> Result<SpectrumSample> {
    let d = nm.dim();
    let mut comps = Vec::with_capacity(d - 1);
    comps.push(nm.clone());
    for k in 2..d {
        let mut c = NormalizedMatrix::from_matrix(compound(&nm.m, k))?;
        c.log_scale += k as f64 * nm.log_scale;
        comps.push(c);
    }
    let det: f64 = nm.m.determinant();
    let log_abs_det = det.abs().ln() + d as f64 * nm.log_scale;
    spectrum_from_companions(d, &comps, log_abs_det, None, 0)
}
