//! Numerical verification of Anosov-type conditions: linear growth of
//! root gaps, hyperconvexity of sampled limit flags, gap-isospectrality,
//! limit-cone extraction and local conformality.
//!
//! Every verdict here is finite-depth evidence, never a proof; reports
//! carry the enumeration radius and margins.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{LabError, Result};
use crate::group::{conjugacy_reps, Presentation, Word};
use crate::replin::{Evaluator, Representation, SpectrumSample};

pub const DEFAULT_MU_MIN: f64 = 1e-3;
pub const DEFAULT_DET_FLOOR: f64 = 1e-6;
pub const DEFAULT_ISO_TOL: f64 = 1e-6;

/// Affine lower bound tau_k(a(gamma)) >= mu |gamma| - c fitted on sphere
/// minima.
#[derive(Clone, Debug)]
pub struct DominationFit {
    pub root_index: usize,
    pub mu: f64,
    pub intercept: f64,
    pub min_margin: f64,
    pub verdict: bool,
    pub radius: usize,
}

/// Sphere minima of tau_k, indexed by word length 1..=radius.
fn sphere_minima(spectra: &[SpectrumSample], k: usize) -> Vec<(usize, f64)> {
    let mut per_len: std::collections::BTreeMap<usize, f64> = Default::default();
    for s in spectra {
        if s.len == 0 {
            continue;
        }
        let v = s.tau_a(k);
        per_len
            .entry(s.len)
            .and_modify(|m| *m = m.min(v))
            .or_insert(v);
    }
    per_len.into_iter().collect()
}

/// Lower convex hull (Andrew monotone chain) of (n, m_n) points.
fn lower_hull(points: &[(usize, f64)]) -> Vec<(f64, f64)> {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(n, m)| (n as f64, m)).collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Fits the domination bound: the slope is taken from the longest edge
/// of the lower convex hull of sphere minima (the asymptotically
/// supporting line), with the minimal nonnegative intercept.
pub fn domination_fit(
    spectra: &[SpectrumSample],
    k: usize,
    mu_min: f64,
) -> Result<DominationFit> {
    let minima = sphere_minima(spectra, k);
    if minima.len() < 2 {
        return Err(LabError::WindowTooSmall(format!(
            "domination fit needs >= 2 sphere levels, got {}",
            minima.len()
        )));
    }
    let radius = minima.last().unwrap().0;
    let hull = lower_hull(&minima);
    let mut mu = 0.0f64;
    let mut best_span = -1.0f64;
    for e in hull.windows(2) {
        let span = e[1].0 - e[0].0;
        if span > best_span {
            best_span = span;
            mu = (e[1].1 - e[0].1) / span;
        }
    }
    let mu = mu.max(0.0);
    let intercept = minima
        .iter()
        .map(|&(n, m)| mu * n as f64 - m)
        .fold(0.0f64, f64::max);
    let min_margin = minima
        .iter()
        .map(|&(n, m)| m - mu * n as f64 + intercept)
        .fold(f64::INFINITY, f64::min);
    Ok(DominationFit {
        root_index: k,
        mu,
        intercept,
        min_margin,
        verdict: mu >= mu_min,
        radius,
    })
}

/// Sampled flag data for one boundary point: the limit line and an
/// orthonormal frame of the top (d-p)-dimensional limit subspace.
#[derive(Clone, Debug)]
pub struct TripleFrame {
    pub xi: DVector<f64>,
    pub frame_top: DMatrix<f64>,
    pub order_key: f64,
}

#[derive(Clone, Debug)]
pub struct HyperconvexityReport {
    pub min_det: f64,
    pub verdict: bool,
    pub triples: usize,
    pub skipped_coincident: usize,
    /// Always "sampled, not proven": the condition is quantified over
    /// all distinct boundary triples.
    pub caveat: &'static str,
}

/// Normalized transversality determinant of one triple.
fn triple_det(x: &TripleFrame, y: &TripleFrame, z: &TripleFrame, d: usize, p: usize) -> f64 {
    let cols = 2 + d - p;
    let mut m = DMatrix::zeros(d, cols);
    m.set_column(0, &x.xi);
    m.set_column(1, &y.xi);
    for c in 0..d - p {
        m.set_column(2 + c, &z.frame_top.column(c).into_owned());
    }
    if cols == d {
        m.determinant().abs()
    } else {
        let svd = m.svd(false, false);
        svd.singular_values[cols - 1]
    }
}

fn coincident(a: &DVector<f64>, b: &DVector<f64>) -> bool {
    let dot = a.dot(b).abs();
    1.0 - dot * dot < 1e-18
}

/// Samples triples (uniform, adjacent-window and mixed strata so that
/// near-degenerate configurations are probed) and reports the minimal
/// normalized determinant.
pub fn hyperconvexity_check(
    frames: &[TripleFrame],
    p: usize,
    threshold: f64,
    triples: usize,
    seed: u64,
) -> Result<HyperconvexityReport> {
    let n = frames.len();
    if n < 3 {
        return Err(LabError::WindowTooSmall(
            "hyperconvexity needs >= 3 boundary samples".into(),
        ));
    }
    let d = frames[0].xi.len();
    if p < 2 || p > d - 1 {
        return Err(LabError::WindowTooSmall(format!("p={p} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_det = f64::INFINITY;
    let mut used = 0usize;
    let mut skipped = 0usize;
    for t in 0..triples {
        let (i, j, k) = match t % 3 {
            0 => (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            ),
            1 => {
                // adjacent stratum: all three inside a short window
                let w = 3 + rng.gen_range(0..8);
                let base = rng.gen_range(0..n);
                (
                    base,
                    (base + 1 + rng.gen_range(0..w)) % n,
                    (base + 1 + rng.gen_range(0..2 * w)) % n,
                )
            }
            _ => {
                // near pair against a far point
                let base = rng.gen_range(0..n);
                (
                    base,
                    (base + 1) % n,
                    (base + n / 2 + rng.gen_range(0..n / 2)) % n,
                )
            }
        };
        if i == j || j == k || i == k {
            skipped += 1;
            continue;
        }
        let (x, y, z) = (&frames[i], &frames[j], &frames[k]);
        if coincident(&x.xi, &y.xi) || coincident(&x.xi, &z.xi) || coincident(&y.xi, &z.xi) {
            skipped += 1;
            continue;
        }
        let det = triple_det(x, y, z, d, p);
        min_det = min_det.min(det);
        used += 1;
    }
    if used == 0 {
        return Err(LabError::Inconclusive(
            "all sampled triples were coincident".into(),
        ));
    }
    Ok(HyperconvexityReport {
        min_det,
        verdict: min_det > threshold,
        triples: used,
        skipped_coincident: skipped,
        caveat: "sampled, not proven",
    })
}

#[derive(Clone, Debug)]
pub struct GapIsospectralReport {
    pub max_deviation: f64,
    pub witness: Word,
    pub classes: usize,
    pub radius: usize,
}

/// Maximal deviation |tau_1(lambda(rho(gamma))) - tau_1(lambda(rhobar(gamma)))|
/// over conjugacy classes of length <= n.
pub fn gap_isospectral_check(
    pres: &Presentation,
    rep: &Representation,
    repbar: &Representation,
    n: usize,
    cap: usize,
) -> Result<GapIsospectralReport> {
    let reps = conjugacy_reps(pres, n, cap, false)?;
    let mut ev = Evaluator::new(rep);
    let mut evb = Evaluator::new(repbar);
    let mut max_dev = 0.0f64;
    let mut witness = Word::empty();
    for w in &reps {
        let s = ev.spectrum(w)?;
        let sb = evb.spectrum(w)?;
        let dev = (s.tau_lambda(1) - sb.tau_lambda(1)).abs();
        if dev > max_dev {
            max_dev = dev;
            witness = w.clone();
        }
    }
    Ok(GapIsospectralReport {
        max_deviation: max_dev,
        witness,
        classes: reps.len(),
        radius: n,
    })
}

/// Projectivized Jordan spectra with their hull in the gap plane.
#[derive(Clone, Debug)]
pub struct LimitConeSample {
    /// unit-norm Jordan vectors (Weyl chamber: coordinates descending)
    pub points: Vec<Vec<f64>>,
    /// their (tau_1, tau_2) gap coordinates
    pub gap_points: Vec<(f64, f64)>,
    /// convex hull of gap_points, counterclockwise
    pub hull: Vec<(f64, f64)>,
    pub hull_area: f64,
    pub skipped_elliptic: usize,
}

/// Convex hull, monotone chain; returns ccw polygon.
pub fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn polygon_area(poly: &[(f64, f64)]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        acc += x1 * y2 - x2 * y1;
    }
    acc.abs() / 2.0
}

/// Extracts the projectivized limit-cone sample from Jordan spectra
/// (conjugacy-class periods). Elliptic elements (vanishing Jordan
/// vector) are skipped and counted.
pub fn limit_cone(spectra: &[SpectrumSample]) -> LimitConeSample {
    let mut points = Vec::new();
    let mut gap_points = Vec::new();
    let mut skipped = 0usize;
    for s in spectra {
        let norm: f64 = s.jordan.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-9 {
            skipped += 1;
            continue;
        }
        let p: Vec<f64> = s.jordan.iter().map(|x| x / norm).collect();
        let t1 = (s.jordan[0] - s.jordan[1]) / norm;
        let t2 = if s.jordan.len() > 2 {
            (s.jordan[1] - s.jordan[2]) / norm
        } else {
            0.0
        };
        points.push(p);
        gap_points.push((t1, t2));
    }
    let hull = convex_hull(&gap_points);
    let hull_area = polygon_area(&hull);
    LimitConeSample {
        points,
        gap_points,
        hull,
        hull_area,
        skipped_elliptic: skipped,
    }
}

/// max |a_2 - a_p| over the given Cartan spectra; identically 0 for p=2.
pub fn local_conformal_check(spectra: &[SpectrumSample], p: usize) -> f64 {
    spectra
        .iter()
        .map(|s| (s.cartan[1] - s.cartan[p - 1]).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::group::{ball, DEFAULT_ELEMENT_CAP};

    fn ball_spectra(name: &str, radius: usize) -> Vec<SpectrumSample> {
        let entry = builtin(name).unwrap();
        let b = ball(&entry.presentation, radius, DEFAULT_ELEMENT_CAP).unwrap();
        let mut ev = Evaluator::new(&entry.rep);
        b.iter().map(|w| ev.spectrum(w).unwrap()).collect()
    }

    #[test]
    fn fuchsian_sym2_is_dominated() {
        let spectra = ball_spectra("fuchsian-g2-sym2", 5);
        let fit = domination_fit(&spectra, 1, DEFAULT_MU_MIN).unwrap();
        assert!(fit.verdict, "{fit:?}");
        assert!(fit.mu > 0.5, "octagon gaps grow fast, got mu={}", fit.mu);
        assert!(fit.min_margin >= 0.0);
    }

    #[test]
    fn trivial_rep_fails_domination() {
        let entry = builtin("f2-schottky").unwrap();
        let pres = &entry.presentation;
        let id = DMatrix::identity(3, 3);
        let rep = Representation::new("trivial", 3, vec![id.clone(), id.clone(), id.clone(), id]);
        let b = ball(pres, 6, DEFAULT_ELEMENT_CAP).unwrap();
        let mut ev = Evaluator::new(&rep);
        let spectra: Vec<_> = b.iter().map(|w| ev.spectrum(w).unwrap()).collect();
        let fit = domination_fit(&spectra, 1, DEFAULT_MU_MIN).unwrap();
        assert!(!fit.verdict);
        assert!(fit.mu.abs() < 1e-12);
    }

    #[test]
    fn cancelling_reducible_rep_fails_domination() {
        // generators with opposite diagonals: gaps vanish on even spheres
        let entry = builtin("f2-schottky").unwrap();
        let pres = &entry.presentation;
        let a = DMatrix::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 1.0]);
        let b = DMatrix::from_row_slice(3, 3, &[0.5, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0]);
        let rep = Representation::new(
            "blocks",
            3,
            vec![
                a.clone(),
                a.try_inverse().unwrap(),
                b.clone(),
                b.try_inverse().unwrap(),
            ],
        );
        let bl = ball(pres, 6, DEFAULT_ELEMENT_CAP).unwrap();
        let mut ev = Evaluator::new(&rep);
        let spectra: Vec<_> = bl.iter().map(|w| ev.spectrum(w).unwrap()).collect();
        for k in [1, 2] {
            let fit = domination_fit(&spectra, k, DEFAULT_MU_MIN).unwrap();
            assert!(!fit.verdict, "k={k}: {fit:?}");
        }
    }

    #[test]
    fn domination_mu_is_stable_under_deeper_data() {
        let s8 = ball_spectra("triangle-334-vinberg(0)", 8);
        let s11 = ball_spectra("triangle-334-vinberg(0)", 11);
        let f8 = domination_fit(&s8, 1, DEFAULT_MU_MIN).unwrap();
        let f11 = domination_fit(&s11, 1, DEFAULT_MU_MIN).unwrap();
        assert!(
            f11.mu <= f8.mu + 0.05,
            "supporting slope grew: {} -> {}",
            f8.mu,
            f11.mu
        );
    }

    #[test]
    fn gap_isospectrality_of_rep_with_itself_is_exact() {
        let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
        let report = gap_isospectral_check(
            &entry.presentation,
            &entry.rep,
            &entry.rep,
            4,
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        assert_eq!(report.max_deviation, 0.0);
        assert!(report.classes > 0);
    }

    #[test]
    fn fuchsian_sym2_is_gap_isospectral_with_dual() {
        let entry = builtin("fuchsian-g2-sym2").unwrap();
        let dual = entry.rep.dual();
        let report =
            gap_isospectral_check(&entry.presentation, &entry.rep, &dual, 3, DEFAULT_ELEMENT_CAP)
                .unwrap();
        assert!(
            report.max_deviation < 1e-8,
            "symmetric spectra: tau1 = tau2, got {}",
            report.max_deviation
        );
    }

    #[test]
    fn deformed_vinberg_is_not_gap_isospectral_with_dual() {
        let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
        let dual = entry.rep.dual();
        let report =
            gap_isospectral_check(&entry.presentation, &entry.rep, &dual, 6, DEFAULT_ELEMENT_CAP)
                .unwrap();
        assert!(
            report.max_deviation > 0.01,
            "deformation should split the gaps, got {}",
            report.max_deviation
        );
    }

    #[test]
    fn limit_cone_of_fuchsian_lies_on_diagonal_ray() {
        let entry = builtin("fuchsian-g2-sym2").unwrap();
        let reps = conjugacy_reps(&entry.presentation, 3, DEFAULT_ELEMENT_CAP, false).unwrap();
        let mut ev = Evaluator::new(&entry.rep);
        let spectra: Vec<_> = reps.iter().map(|w| ev.spectrum(w).unwrap()).collect();
        let cone = limit_cone(&spectra);
        for &(t1, t2) in &cone.gap_points {
            assert!((t1 - t2).abs() < 1e-8, "symmetric spectra forced");
        }
        assert!(cone.hull_area < 1e-12);
        // Weyl chamber ordering
        for p in &cone.points {
            for i in 1..p.len() {
                assert!(p[i - 1] >= p[i] - 1e-12);
            }
        }
    }

    #[test]
    fn deformed_limit_cone_has_interior() {
        let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
        let reps = conjugacy_reps(&entry.presentation, 8, DEFAULT_ELEMENT_CAP, false).unwrap();
        let mut ev = Evaluator::new(&entry.rep);
        let spectra: Vec<_> = reps.iter().map(|w| ev.spectrum(w).unwrap()).collect();
        let cone = limit_cone(&spectra);
        assert!(
            cone.hull_area > 1e-4,
            "deformation spreads periods, area = {}",
            cone.hull_area
        );
    }

    #[test]
    fn block_diagonal_rep_fails_hyperconvexity() {
        // 2-dim Schottky plus a trivial line: all limit lines live in
        // the invariant plane, so every triple determinant vanishes
        let entry = builtin("f2-schottky").unwrap();
        let base = crate::catalog::schottky_f2(&entry.presentation);
        let mut mats = Vec::new();
        for s in 0..4u8 {
            let m2 = base.generator(s);
            let mut m = DMatrix::identity(3, 3);
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = m2[(i, j)];
                }
            }
            mats.push(m);
        }
        let block = Representation::new("block", 3, mats);
        let rays = crate::group::geodesic_rays(&entry.presentation, 14, 60, 3);
        let mut ev = Evaluator::new(&block);
        let mut frames = Vec::new();
        for (i, ray) in rays.iter().enumerate() {
            let nm = ev.entry(&ray.prefix(14)).unwrap().matrix().clone();
            let Ok(att) = crate::replin::cartan_attractor(&nm, 1e-9) else {
                continue;
            };
            frames.push(TripleFrame {
                xi: att.0.clone(),
                frame_top: DMatrix::from_column_slice(3, 1, att.0.as_slice()),
                order_key: i as f64,
            });
        }
        assert!(frames.len() > 20);
        let hc = hyperconvexity_check(&frames, 2, DEFAULT_DET_FLOOR, 4000, 1).unwrap();
        assert!(!hc.verdict, "degenerate configuration must fail: {hc:?}");
        assert!(hc.min_det < 1e-8, "determinants should vanish, got {}", hc.min_det);
    }

    #[test]
    fn coincident_triples_are_filtered() {
        use nalgebra::DVector;
        // duplicated boundary points: coincident triples are excluded
        // rather than counted as degenerate
        let pts = [
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
            DVector::from_vec(vec![0.0, 0.0, 1.0]),
            DVector::from_vec(vec![1.0, 0.0, 0.0]), // repeat of the first
        ];
        let frames: Vec<TripleFrame> = pts
            .iter()
            .enumerate()
            .map(|(i, v)| TripleFrame {
                xi: v.clone(),
                frame_top: DMatrix::from_column_slice(3, 1, v.as_slice()),
                order_key: i as f64,
            })
            .collect();
        let hc = hyperconvexity_check(&frames, 2, 1e-6, 2000, 7).unwrap();
        assert!(hc.skipped_coincident > 0, "{hc:?}");
        // the surviving triples are orthonormal: determinant 1
        assert!((hc.min_det - 1.0).abs() < 1e-12);
        assert!(hc.verdict);
    }

    #[test]
    fn local_conformality_is_vacuous_for_p2() {
        let spectra = ball_spectra("triangle-334-vinberg(0.7)", 5);
        assert_eq!(local_conformal_check(&spectra, 2), 0.0);
    }
}
