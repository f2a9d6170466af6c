//! Fractal-dimension estimation: grid-shifted box counting in affine
//! charts, beta-conical point detection along rays, the cover-based
//! upper-bound exponent, and the non-differentiability dimension
//! pipeline.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::OrderingRef;
use crate::error::{LabError, Result};
use crate::exponents::{
    ball_pair_spectra, critical_exponent_of_values, hinf, ExponentEstimate, ExponentMethod,
    PairSample, DEFAULT_WINDOW,
};
use crate::group::Presentation;
use crate::limitset::{flag_samples, BoundarySample, FlagCurveParams};
use crate::replin::{Evaluator, Representation};

/// Point cloud in one or two projective factors with the product
/// L-infinity metric (single factor: plain projective metric).
#[derive(Clone, Debug)]
pub struct MetricPointCloud {
    pub factor_dims: Vec<usize>,
    /// concatenated unit-vector coordinates per point
    pub points: Vec<Vec<f64>>,
}

impl MetricPointCloud {
    pub fn single(points: Vec<Vec<f64>>, dim: usize) -> MetricPointCloud {
        MetricPointCloud {
            factor_dims: vec![dim],
            points,
        }
    }

    pub fn product(points: Vec<Vec<f64>>, d1: usize, d2: usize) -> MetricPointCloud {
        MetricPointCloud {
            factor_dims: vec![d1, d2],
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Affine-chart coordinates in the margin-maximizing charts.
    pub fn chart_coordinates(&self) -> Vec<Vec<f64>> {
        let frames = self.chart_frames();
        self.chart_coordinates_with(&frames)
    }

    /// Per-factor orthonormal chart frame `[pivot, e_1, ..., e_{d-1}]`:
    /// the pivot is the eigenvector of the second-moment matrix with the
    /// largest margin min_j |<pivot, v_j>| from the cloud (no coordinate
    /// axis works for a full conic, but the moment direction does).
    pub fn chart_frames(&self) -> Vec<nalgebra::DMatrix<f64>> {
        let mut frames = Vec::new();
        let mut off = 0;
        for &d in &self.factor_dims {
            let mut moment = nalgebra::DMatrix::zeros(d, d);
            for p in &self.points {
                for i in 0..d {
                    for j in 0..d {
                        moment[(i, j)] += p[off + i] * p[off + j];
                    }
                }
            }
            let eig = moment.symmetric_eigen();
            // order candidate pivots by eigenvalue, pick max margin
            let mut idx: Vec<usize> = (0..d).collect();
            idx.sort_by(|&a, &b| {
                let (ea, eb): (f64, f64) = (eig.eigenvalues[a], eig.eigenvalues[b]);
                eb.partial_cmp(&ea).unwrap()
            });
            let margin_of = |col: usize| -> f64 {
                self.points
                    .iter()
                    .map(|p| {
                        (0..d)
                            .map(|i| p[off + i] * eig.eigenvectors[(i, col)])
                            .sum::<f64>()
                            .abs()
                    })
                    .fold(f64::INFINITY, f64::min)
            };
            let pivot = *idx
                .iter()
                .max_by(|&&a, &&b| margin_of(a).partial_cmp(&margin_of(b)).unwrap())
                .unwrap();
            let mut frame = nalgebra::DMatrix::zeros(d, d);
            let mut col = 0;
            frame.set_column(0, &eig.eigenvectors.column(pivot).into_owned());
            for &i in &idx {
                if i != pivot {
                    col += 1;
                    frame.set_column(col, &eig.eigenvectors.column(i).into_owned());
                }
            }
            frames.push(frame);
            off += d;
        }
        frames
    }

    /// Coordinates in explicit chart frames (first column = pivot).
    pub fn chart_coordinates_with(&self, frames: &[nalgebra::DMatrix<f64>]) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut coords = Vec::new();
            let mut off = 0;
            for (f, &d) in self.factor_dims.iter().enumerate() {
                let frame = &frames[f];
                let comp = |col: usize| -> f64 {
                    (0..d).map(|i| p[off + i] * frame[(i, col)]).sum()
                };
                let pivot = comp(0);
                for c in 1..d {
                    coords.push(comp(c) / pivot);
                }
                off += d;
            }
            out.push(coords);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BoxDimReport {
    pub slope: f64,
    pub stderr: f64,
    /// (eps, mean box count over shifts)
    pub counts: Vec<(f64, f64)>,
    /// slopes between consecutive eps levels, exposing log-log curvature
    pub local_slopes: Vec<f64>,
    pub trimmed: usize,
}

fn count_boxes(coords: &[Vec<f64>], eps: f64, shift: &[f64]) -> usize {
    let mut keys: std::collections::HashSet<Vec<i64>> = Default::default();
    for c in coords {
        let key: Vec<i64> = c
            .iter()
            .zip(shift)
            .map(|(x, s)| ((x - s) / eps).floor() as i64)
            .collect();
        keys.insert(key);
    }
    keys.len()
}

/// Upper box dimension by least squares of log N against log(1/eps),
/// averaged over random grid shifts. Scales where the cloud resolves
/// into near-singletons are trimmed with a warning count.
pub fn box_dim(
    cloud: &MetricPointCloud,
    eps_range: &[f64],
    grid_shifts: usize,
    seed: u64,
) -> Result<BoxDimReport> {
    if cloud.len() < 1000 {
        return Err(LabError::WindowTooSmall(format!(
            "box counting needs >= 1000 points, got {}",
            cloud.len()
        )));
    }
    let lo = eps_range.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eps_range.iter().cloned().fold(0.0f64, f64::max);
    if !(lo > 0.0) || hi / lo < 10.0 {
        return Err(LabError::WindowTooSmall(
            "eps range must span at least one decade".into(),
        ));
    }
    let coords = cloud.chart_coordinates();
    let ncoords = coords[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eps_sorted = eps_range.to_vec();
    eps_sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut counts = Vec::new();
    let mut trimmed = 0usize;
    for &eps in &eps_sorted {
        let mut total = 0.0;
        let shifts = grid_shifts.max(1);
        for _ in 0..shifts {
            let shift: Vec<f64> = (0..ncoords).map(|_| rng.gen_range(0.0..eps)).collect();
            total += count_boxes(&coords, eps, &shift) as f64;
        }
        let mean = total / shifts as f64;
        if mean >= 0.6 * cloud.len() as f64 {
            trimmed += 1;
            continue;
        }
        counts.push((eps, mean));
    }
    if counts.len() < 3 {
        return Err(LabError::WindowTooSmall(
            "too few usable eps levels after trimming".into(),
        ));
    }
    let xs: Vec<f64> = counts.iter().map(|(e, _)| -(e.ln())).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, n)| n.ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let resid: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let f = ybar + slope * (x - xbar);
            (y - f) * (y - f)
        })
        .sum();
    let stderr = if n > 2.0 {
        (resid / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    let local_slopes: Vec<f64> = counts
        .windows(2)
        .map(|w| (w[1].1.ln() - w[0].1.ln()) / (w[0].0.ln() - w[1].0.ln()))
        .collect();
    Ok(BoxDimReport {
        slope,
        stderr,
        counts,
        local_slopes,
        trimmed,
    })
}

/// Geometric eps ladder between hi and lo.
pub fn eps_ladder(hi: f64, lo: f64, steps: usize) -> Vec<f64> {
    let ratio = (lo / hi).powf(1.0 / (steps - 1) as f64);
    (0..steps).map(|i| hi * ratio.powi(i as i32)).collect()
}

/// Paired per-prefix gap values along one ray.
#[derive(Clone, Debug)]
pub struct RayPairSpectra {
    pub sample: usize,
    /// tau(a(alpha_k)) for k = 1..=depth under rho
    pub t1: Vec<f64>,
    /// same under rhobar
    pub t2: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct ConicalVerdict {
    pub sample: usize,
    pub beta: f64,
    pub r: f64,
    pub window: (usize, usize),
    pub hits: Vec<usize>,
    pub verdict: bool,
}

/// beta-conicality detection: depths k in the window where
/// |beta tau(a(alpha_k)) - taubar(a(alphabar_k))| <= R. The verdict needs
/// at least `min_hits` hits.
pub fn conical_points(
    rays: &[RayPairSpectra],
    beta: f64,
    r: f64,
    window: std::ops::RangeInclusive<usize>,
    min_hits: usize,
) -> Vec<ConicalVerdict> {
    let (w0, w1) = (*window.start(), *window.end());
    rays.iter()
        .map(|ray| {
            let hits: Vec<usize> = (w0..=w1.min(ray.t1.len()))
                .filter(|&k| (beta * ray.t1[k - 1] - ray.t2[k - 1]).abs() <= r)
                .collect();
            let verdict = hits.len() >= min_hits;
            ConicalVerdict {
                sample: ray.sample,
                beta,
                r,
                window: (w0, w1),
                hits,
                verdict,
            }
        })
        .collect()
}

/// Per-prefix pair spectra for boundary samples.
pub fn ray_pair_spectra(
    samples: &[BoundarySample],
    rep: &Representation,
    repbar: &Representation,
) -> Result<Vec<RayPairSpectra>> {
    let mut ev = Evaluator::new(rep);
    let mut evb = Evaluator::new(repbar);
    let mut out = Vec::with_capacity(samples.len());
    for (i, s) in samples.iter().enumerate() {
        let depth = s.ray.depth();
        let mut t1 = Vec::with_capacity(depth);
        let mut t2 = Vec::with_capacity(depth);
        for k in 1..=depth {
            t1.push(ev.spectrum(&s.ray.prefix(k))?.tau_a(1));
            t2.push(evb.spectrum(&s.ray.prefix(k))?.tau_a(1));
        }
        out.push(RayPairSpectra { sample: i, t1, t2 });
    }
    Ok(out)
}

/// Coarse-stability step bound: max over generators of a_1(s) + a_1(s^{-1}).
pub fn generator_step_bound(rep: &Representation) -> f64 {
    let mut ev = Evaluator::new(rep);
    let mut bound = 0.0f64;
    for s in 0..rep.num_symbols() as u8 {
        let w = crate::group::Word(vec![s]);
        if let Ok(sp) = ev.spectrum(&w) {
            bound = bound.max(sp.cartan[0]);
        }
    }
    2.0 * bound
}

#[derive(Clone, Debug)]
pub struct CoverDimEstimate {
    pub value: f64,
    pub bracket: (f64, f64),
    pub qualifying: usize,
}

/// Empirical critical exponent of the cover sum over R-gap-qualifying
/// elements with radii e^{-max(beta tau, taubar)}: the s where truncated
/// sums switch between growth and decay across depth.
pub fn cover_dim_upper(
    pairs: &[PairSample],
    beta: f64,
    r: f64,
    max_len: usize,
) -> Result<CoverDimEstimate> {
    let qualifying: Vec<(usize, f64)> = pairs
        .iter()
        .filter(|p| p.len >= 1 && p.len <= max_len && (beta * p.t1 - p.t2).abs() <= r)
        .map(|p| (p.len, (beta * p.t1).max(p.t2)))
        .collect();
    if qualifying.len() < 50 {
        return Err(LabError::Inconclusive(format!(
            "only {} elements satisfy the R-gap condition",
            qualifying.len()
        )));
    }
    let est = critical_exponent_of_values(
        &qualifying,
        ExponentMethod::PoincareRoot,
        DEFAULT_WINDOW,
        None,
    )?;
    Ok(CoverDimEstimate {
        value: est.value,
        bracket: est.window,
        qualifying: qualifying.len(),
    })
}

#[derive(Clone, Debug)]
pub struct NdiffReport {
    pub flagged: usize,
    pub total: usize,
    pub box_dim_flagged: BoxDimReport,
    pub h_inf_one: ExponentEstimate,
    pub agreement: f64,
    pub verdict: bool,
    pub conical_r: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct NdiffParams {
    pub sample_budget: usize,
    pub depth: usize,
    pub ball_radius: usize,
    pub seed: u64,
    pub min_hits: usize,
    pub tolerance: f64,
    pub iso_tol: f64,
}

impl Default for NdiffParams {
    fn default() -> Self {
        NdiffParams {
            sample_budget: 4000,
            depth: 30,
            ball_radius: 12,
            seed: 2,
            min_hits: 3,
            tolerance: 0.2,
            iso_tol: crate::anosov::DEFAULT_ISO_TOL,
        }
    }
}

/// Theorem-B-prime pipeline at desk scale: flags 1-conical boundary
/// samples, box-counts the flagged subset of the flag curve in the
/// product metric and compares with the h_{infinity,1} estimate.
/// Gap-isospectral pairs are refused.
pub fn ndiff_dimension(
    pres: &Presentation,
    rep: &Representation,
    repbar: &Representation,
    ordering: &OrderingRef,
    params: &NdiffParams,
) -> Result<NdiffReport> {
    let gap = crate::anosov::gap_isospectral_check(pres, rep, repbar, 5, crate::group::DEFAULT_ELEMENT_CAP)?;
    if gap.max_deviation < crate::exponents::ISO_REFUSAL_FACTOR * params.iso_tol {
        return Err(LabError::HypothesisViolated(format!(
            "gap-isospectral pair (max deviation {:.3e}): the dimension formula is vacuous",
            gap.max_deviation
        )));
    }
    let fparams = FlagCurveParams {
        count: params.sample_budget,
        depth: params.depth,
        seed: params.seed,
        ..Default::default()
    };
    let samples = flag_samples(pres, rep, repbar, ordering, &fparams)?;
    let rays = ray_pair_spectra(&samples, rep, repbar)?;
    let r = 2.0 * generator_step_bound(rep).max(generator_step_bound(repbar));
    let window = 10..=params.depth;
    let verdicts = conical_points(&rays, 1.0, r, window, params.min_hits);
    let d = rep.dim;
    let db = repbar.dim;
    let flagged_points: Vec<Vec<f64>> = verdicts
        .iter()
        .filter(|v| v.verdict)
        .map(|v| {
            let s = &samples[v.sample];
            let mut coords: Vec<f64> = s.xi.0.iter().cloned().collect();
            coords.extend(s.xibar.0.iter().cloned());
            coords
        })
        .collect();
    let flagged = flagged_points.len();
    let cloud = MetricPointCloud::product(flagged_points, d, db);
    let eps = eps_ladder(0.3, 0.004, 10);
    let box_dim_flagged = box_dim(&cloud, &eps, 3, params.seed)?;
    let pairs = ball_pair_spectra(pres, rep, repbar, params.ball_radius, crate::group::DEFAULT_ELEMENT_CAP)?;
    let h_inf_one = hinf(
        1.0,
        &pairs,
        ExponentMethod::PoincareRoot,
        DEFAULT_WINDOW,
        None,
    )?;
    let agreement = (box_dim_flagged.slope - h_inf_one.value).abs();
    Ok(NdiffReport {
        flagged,
        total: samples.len(),
        verdict: agreement <= params.tolerance,
        agreement,
        box_dim_flagged,
        h_inf_one,
        conical_r: r,
    })
}
