//! Scale-tracked matrices and exterior powers.
//!
//! Long products overflow f64 quickly, so every product is stored at
//! unit Frobenius norm with the divided-out log factors accumulated in
//! `log_scale`. Exterior powers are multiplicative, which turns every
//! partial sum a_1 + ... + a_k of the Cartan projection into the TOP
//! singular value of a companion product; top values are the ones f64
//! resolves at full relative accuracy, so deep words stay accurate
//! without extended precision.

use nalgebra::DMatrix;

use crate::error::{LabError, Result};

/// Unit-Frobenius-norm matrix with its accumulated log scale.
/// True matrix = e^{log_scale} * m.
#[derive(Clone, Debug)]
pub struct NormalizedMatrix {
    pub m: DMatrix<f64>,
    pub log_scale: f64,
}

impl NormalizedMatrix {
    pub fn from_matrix(m: DMatrix<f64>) -> Result<NormalizedMatrix> {
        let norm = m.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(LabError::NumericOverflow {
                word: "<matrix>".into(),
            });
        }
        Ok(NormalizedMatrix {
            m: m / norm,
            log_scale: norm.ln(),
        })
    }

    pub fn identity(d: usize) -> NormalizedMatrix {
        let m = DMatrix::identity(d, d);
        let norm = (d as f64).sqrt();
        NormalizedMatrix {
            m: m / norm,
            log_scale: norm.ln(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Right-multiplies by a raw matrix and renormalizes.
    pub fn mul_raw(&self, g: &DMatrix<f64>) -> Result<NormalizedMatrix> {
        let prod = &self.m * g;
        let norm = prod.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(LabError::NumericOverflow {
                word: "<product>".into(),
            });
        }
        Ok(NormalizedMatrix {
            m: prod / norm,
            log_scale: self.log_scale + norm.ln(),
        })
    }

    pub fn mul(&self, other: &NormalizedMatrix) -> Result<NormalizedMatrix> {
        let mut r = self.mul_raw(&other.m)?;
        r.log_scale += other.log_scale;
        Ok(r)
    }

    /// The true matrix; panics on overflow, callers use it only for
    /// short words and tests.
    pub fn true_matrix(&self) -> DMatrix<f64> {
        &self.m * self.log_scale.exp()
    }
}

/// Index pairs/sets for exterior powers: k-combinations of 0..d in
/// lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + d - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn minor(m: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> f64 {
    match rows.len() {
        1 => m[(rows[0], cols[0])],
        2 => {
            m[(rows[0], cols[0])] * m[(rows[1], cols[1])]
                - m[(rows[0], cols[1])] * m[(rows[1], cols[0])]
        }
        3 => {
            let a = |i: usize, j: usize| m[(rows[i], cols[j])];
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        }
        n => {
            // general Laplace expansion; d <= 4 keeps this tiny
            let mut acc = 0.0;
            let mut sign = 1.0;
            for c in 0..n {
                let sub_rows: Vec<usize> = rows[1..].to_vec();
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != c)
                    .map(|(_, &x)| x)
                    .collect();
                acc += sign * m[(rows[0], cols[c])] * minor(m, &sub_rows, &sub_cols);
                sign = -sign;
            }
            acc
        }
    }
}

/// k-th compound matrix: entries are k x k minors, indexed by
/// lexicographic k-combinations. Multiplicative: C_k(AB) = C_k(A) C_k(B).
pub fn compound(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let d = m.nrows();
    let combos = combinations(d, k);
    let n = combos.len();
    let mut out = DMatrix::zeros(n, n);
    for (i, rows) in combos.iter().enumerate() {
        for (j, cols) in combos.iter().enumerate() {
            out[(i, j)] = minor(m, rows, cols);
        }
    }
    out
}

/// A point of real projective space, stored as a unit vector; equality
/// and distance are modulo sign.
#[derive(Clone, Debug)]
pub struct ProjectivePoint(pub nalgebra::DVector<f64>);

/// A projective hyperplane, stored as a unit covector.
#[derive(Clone, Debug)]
pub struct HyperplanePoint(pub nalgebra::DVector<f64>);

impl ProjectivePoint {
    pub fn new(v: nalgebra::DVector<f64>) -> ProjectivePoint {
        let n = v.norm();
        ProjectivePoint(v / n)
    }
}

impl HyperplanePoint {
    pub fn new(v: nalgebra::DVector<f64>) -> HyperplanePoint {
        let n = v.norm();
        HyperplanePoint(v / n)
    }
}

/// d_P: sine of the angle between two lines. Computed from the chord
/// 2 sin(theta/2) = min |a -+ b|, which keeps full relative accuracy for
/// nearly equal lines where 1 - <a,b>^2 cancels.
pub fn proj_dist(a: &ProjectivePoint, b: &ProjectivePoint) -> f64 {
    let minus = (&a.0 - &b.0).norm();
    let plus = (&a.0 + &b.0).norm();
    let chord = minus.min(plus);
    chord * (1.0 - 0.25 * chord * chord).max(0.0).sqrt()
}

/// Floor applied to degenerate Gromov products (log sin of a zero angle).
pub const GROMOV_FLOOR: f64 = -745.0;

/// Gr(V, l) = log sin(angle(l, V)) = log |phi(v)| for unit inputs; <= 0,
/// clamped at the configured floor.
pub fn gromov_product(hyperplane: &HyperplanePoint, line: &ProjectivePoint) -> f64 {
    let v = hyperplane.0.dot(&line.0).abs();
    if v <= 0.0 {
        GROMOV_FLOOR
    } else {
        v.ln().max(GROMOV_FLOOR)
    }
}
