//! Cartan attractors and repellers.
//!
//! Top singular directions are extracted by power iteration on the Gram
//! matrix: for the strongly gapped products this pipeline produces, it
//! converges in a handful of steps and stays accurate where bidiagonal
//! SVD degrades (near-rank-1 stored matrices).

use nalgebra::{DMatrix, DVector};

use super::matrix::{HyperplanePoint, NormalizedMatrix, ProjectivePoint};
use crate::error::{LabError, Result};

pub const DEFAULT_GAP_TOL: f64 = 1e-6;

/// log(sigma_1/sigma_2) of the stored matrix.
fn top_gap(m: &DMatrix<f64>) -> f64 {
    let eig = (m * m.transpose()).symmetric_eigenvalues();
    let mut v: Vec<f64> = eig.iter().cloned().collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let s1 = v[0].max(0.0);
    let s2 = v[1].max(0.0);
    if s2 == 0.0 {
        f64::INFINITY
    } else {
        0.5 * (s1 / s2).ln()
    }
}

/// Dominant eigendirection of the symmetric PSD matrix `b`.
fn power_iterate(b: &DMatrix<f64>) -> DVector<f64> {
    let d = b.nrows();
    // deterministic start with a component in the top space
    let mut v = DVector::from_fn(d, |i, _| 1.0 + 0.1 * i as f64);
    v /= v.norm();
    let mut prev = v.clone();
    for _ in 0..500 {
        let mut w = b * &v;
        let n = w.norm();
        if n == 0.0 {
            break;
        }
        w /= n;
        let delta = (&w - &v).norm().min((&w + &v).norm());
        prev = v;
        v = w;
        if delta < 1e-16 {
            break;
        }
    }
    let _ = prev;
    v
}

fn checked_gap(m: &DMatrix<f64>, gap_tol: f64) -> Result<()> {
    let gap = top_gap(m);
    if gap.is_nan() || gap <= gap_tol {
        return Err(LabError::AmbiguousAttractor { gap });
    }
    Ok(())
}

/// U_1(g): the left-singular direction of the largest singular value.
pub fn cartan_attractor(nm: &NormalizedMatrix, gap_tol: f64) -> Result<ProjectivePoint> {
    checked_gap(&nm.m, gap_tol)?;
    let b = &nm.m * nm.m.transpose();
    Ok(ProjectivePoint::new(power_iterate(&b)))
}

/// U_{d-1}(g^{-1}) as a covector: the top right-singular direction of g
/// spans the orthogonal complement of the attracting hyperplane of g^{-1}.
pub fn cartan_repeller(nm: &NormalizedMatrix, gap_tol: f64) -> Result<HyperplanePoint> {
    checked_gap(&nm.m, gap_tol)?;
    let b = nm.m.transpose() * &nm.m;
    Ok(HyperplanePoint::new(power_iterate(&b)))
}

/// Orthonormal frame of the top k left-singular directions (orthogonal
/// iteration on the Gram matrix).
pub fn top_frame(nm: &NormalizedMatrix, k: usize) -> DMatrix<f64> {
    let d = nm.m.nrows();
    let b = &nm.m * nm.m.transpose();
    let mut q = DMatrix::from_fn(d, k, |i, j| if i == j { 1.0 } else { 0.03 * (i + 2 * j) as f64 });
    for _ in 0..300 {
        let z = &b * &q;
        let qr = z.qr();
        q = qr.q().columns(0, k).into_owned();
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replin::matrix::proj_dist;
    use nalgebra::{DMatrix, DVector};

    fn nm(rows: &[f64], d: usize) -> NormalizedMatrix {
        NormalizedMatrix::from_matrix(DMatrix::from_row_slice(d, d, rows)).unwrap()
    }

    #[test]
    fn diagonal_attractor_is_first_axis() {
        let g = nm(&[2f64.exp(), 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, (-2f64).exp()], 3);
        let att = cartan_attractor(&g, DEFAULT_GAP_TOL).unwrap();
        let e1 = ProjectivePoint::new(DVector::from_vec(vec![1.0, 0.0, 0.0]));
        assert!(proj_dist(&att, &e1) < 1e-12);
        let rep = cartan_repeller(&g, DEFAULT_GAP_TOL).unwrap();
        assert!((rep.0[0].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cartan_form_oracle() {
        // g = k diag l with known rotations: U_1(g) = k e_1
        let th1 = 0.37f64;
        let th2 = -1.1f64;
        let k = DMatrix::from_row_slice(2, 2, &[th1.cos(), -th1.sin(), th1.sin(), th1.cos()]);
        let l = DMatrix::from_row_slice(2, 2, &[th2.cos(), -th2.sin(), th2.sin(), th2.cos()]);
        let d = DMatrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 1.0 / 3.0]);
        let g = &k * &d * &l;
        let att = cartan_attractor(&NormalizedMatrix::from_matrix(g).unwrap(), 1e-6).unwrap();
        let ke1 = ProjectivePoint::new(k.column(0).into_owned());
        assert!(proj_dist(&att, &ke1) < 1e-10);
    }

    #[test]
    fn near_ambiguous_gap_is_an_error() {
        let g = nm(&[1.0, 0.0, 0.0, 1.0 + 1e-9], 2);
        match cartan_attractor(&g, DEFAULT_GAP_TOL) {
            Err(LabError::AmbiguousAttractor { gap }) => assert!(gap < 1e-6),
            other => panic!("expected ambiguity, got {other:?}"),
        }
    }

    #[test]
    fn attractor_of_powers_converges_to_eigenline() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 0.5]);
        // attracting eigenline of [[2,1],[0,0.5]] is (1, 0)
        let target = ProjectivePoint::new(DVector::from_vec(vec![1.0, 0.0]));
        let mut pow = NormalizedMatrix::from_matrix(m.clone()).unwrap();
        for _ in 0..39 {
            pow = pow.mul_raw(&m).unwrap();
        }
        let att = cartan_attractor(&pow, 1e-6).unwrap();
        assert!(proj_dist(&att, &target) < 1e-6);
    }

    #[test]
    fn top_frame_spans_dominant_block() {
        let g = nm(
            &[5.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 0.01],
            3,
        );
        let q = top_frame(&g, 2);
        // frame spans e1, e2: last row ~ 0
        assert!(q[(2, 0)].abs() < 1e-8);
        assert!(q[(2, 1)].abs() < 1e-8);
        // orthonormal
        let gram = q.transpose() * &q;
        assert!((gram - DMatrix::identity(2, 2)).norm() < 1e-10);
    }
}
