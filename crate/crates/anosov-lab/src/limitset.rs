//! Limit-map approximation along geodesic rays, cyclically ordered flag
//! curves, cone-image diagnostics and the non-differentiability scan.

use crate::catalog::OrderingRef;
use crate::error::{LabError, Result};
use crate::group::{geodesic_rays, reduce, Presentation, Ray, Word};
use crate::replin::{
    cartan_attractor, proj_dist, Evaluator, HyperplanePoint, ProjectivePoint, Representation,
};

pub const DEFAULT_CONV_TOL: f64 = 1e-5;

/// One sampled boundary point with both limit lines and bookkeeping.
#[derive(Clone, Debug)]
pub struct BoundarySample {
    pub ray: Ray,
    pub xi: ProjectivePoint,
    pub xibar: ProjectivePoint,
    pub convergence: f64,
    pub convergence_bar: f64,
    pub order_key: f64,
    pub converged: bool,
}

/// Limit-line approximation U_1(rho(alpha_depth)) with the convergence
/// estimate d_P(U_1(alpha_{depth-1}), U_1(alpha_depth)).
pub fn xi_of_ray(
    ev: &mut Evaluator,
    ray: &Ray,
    depth: usize,
    gap_tol: f64,
) -> Result<(ProjectivePoint, f64)> {
    assert!(depth >= 1 && depth <= ray.depth());
    let cur = cartan_attractor(&ev.entry(&ray.prefix(depth))?.matrix().clone(), gap_tol)?;
    let prev = cartan_attractor(&ev.entry(&ray.prefix(depth - 1))?.matrix().clone(), gap_tol)?;
    let conv = proj_dist(&cur, &prev);
    Ok((cur, conv))
}

/// Limit hyperplane xi^{d-1}(x) as a covector: the Cartan attractor of
/// the dual representation along the same ray (duality keeps the deep
/// products well-conditioned, unlike extracting the last singular vector
/// of a near-rank-1 stored matrix).
pub fn xi_hyperplane(
    dual_ev: &mut Evaluator,
    ray: &Ray,
    depth: usize,
    gap_tol: f64,
) -> Result<HyperplanePoint> {
    let nm = dual_ev.entry(&ray.prefix(depth))?.matrix().clone();
    let att = cartan_attractor(&nm, gap_tol)?;
    Ok(HyperplanePoint::new(att.0))
}

/// Orthonormal frame of the top k-dimensional Cartan attractor.
pub fn xi_frame(
    ev: &mut Evaluator,
    ray: &Ray,
    depth: usize,
    k: usize,
) -> Result<nalgebra::DMatrix<f64>> {
    let nm = ev.entry(&ray.prefix(depth))?.matrix().clone();
    Ok(crate::replin::attractors::top_frame(&nm, k))
}

fn order_key_of_ray(
    ordering: &OrderingRef,
    pres: &Presentation,
    ray: &Ray,
    depth: usize,
    gap_tol: f64,
) -> Result<f64> {
    match ordering {
        OrderingRef::Rp1(ref2) => {
            let mut ev = Evaluator::new(ref2);
            let nm = ev.entry(&ray.prefix(depth))?.matrix().clone();
            let att = cartan_attractor(&nm, gap_tol)?;
            let ang = att.0[1].atan2(att.0[0]).rem_euclid(std::f64::consts::PI);
            Ok(ang / std::f64::consts::PI)
        }
        OrderingRef::Conic { rep, to_diag } => {
            let mut ev = Evaluator::new(rep);
            let nm = ev.entry(&ray.prefix(depth))?.matrix().clone();
            let att = cartan_attractor(&nm, gap_tol)?;
            let mut u = to_diag * &att.0;
            if u[2] < 0.0 {
                u = -u;
            }
            let ang = u[1].atan2(u[0]);
            Ok((ang + std::f64::consts::PI) / (2.0 * std::f64::consts::PI))
        }
        OrderingRef::ShortlexCyclic => {
            let b = pres.num_symbols() as f64;
            let mut key = 0.0;
            let mut weight = 1.0 / b;
            for &s in ray.word.letters().iter().take(16) {
                key += s as f64 * weight;
                weight /= b;
            }
            Ok(key)
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FlagCurveParams {
    pub count: usize,
    pub depth: usize,
    pub seed: u64,
    pub conv_tol: f64,
    pub gap_tol: f64,
}

impl Default for FlagCurveParams {
    fn default() -> Self {
        FlagCurveParams {
            count: 512,
            depth: 24,
            seed: 1,
            conv_tol: DEFAULT_CONV_TOL,
            gap_tol: 1e-9,
        }
    }
}

/// Samples the flag curve: seeded rays, both limit lines, convergence
/// estimates and cyclic order keys. Unconverged samples are flagged but
/// kept. The result is sorted by order key.
pub fn flag_samples(
    pres: &Presentation,
    rep: &Representation,
    repbar: &Representation,
    ordering: &OrderingRef,
    params: &FlagCurveParams,
) -> Result<Vec<BoundarySample>> {
    let rays = geodesic_rays(pres, params.depth, params.count, params.seed);
    let mut ev = Evaluator::new(rep);
    let mut evb = Evaluator::new(repbar);
    let mut seen: std::collections::HashSet<Word> = Default::default();
    let mut out = Vec::new();
    for ray in rays {
        if !seen.insert(ray.word.clone()) {
            continue;
        }
        let (xi, conv) = xi_of_ray(&mut ev, &ray, params.depth, params.gap_tol)?;
        let (xibar, convb) = xi_of_ray(&mut evb, &ray, params.depth, params.gap_tol)?;
        let order_key = order_key_of_ray(ordering, pres, &ray, params.depth, params.gap_tol)?;
        let converged = conv < params.conv_tol && convb < params.conv_tol;
        out.push(BoundarySample {
            ray,
            xi,
            xibar,
            convergence: conv,
            convergence_bar: convb,
            order_key,
            converged,
        });
    }
    out.sort_by(|a, b| a.order_key.partial_cmp(&b.order_key).unwrap());
    Ok(out)
}

/// Per-prefix cone-image statistics along a base ray.
#[derive(Clone, Debug)]
pub struct ConeImageStat {
    pub prefix_len: usize,
    pub tau1: f64,
    pub members: usize,
    pub diameter: f64,
    /// diameter * e^{tau_1(a(alpha_n))}, the two-sided sandwich ratio
    pub ratio: f64,
}

/// For each prefix alpha_n of `base` with n in `window`, collects the
/// samples lying in the pushed coarse cone type (geodesic-slack test at
/// constant `c`) and measures the projective diameter of their
/// xi-images. Cones with fewer than 2 members are skipped.
pub fn cone_image_stats(
    pres: &Presentation,
    rep: &Representation,
    samples: &[BoundarySample],
    base: &Ray,
    window: std::ops::RangeInclusive<usize>,
    c: usize,
) -> Result<Vec<ConeImageStat>> {
    let mut ev = Evaluator::new(rep);
    let mut out = Vec::new();
    for n in window {
        let gamma = base.prefix(n);
        let gamma_inv = pres.inverse_word(&gamma);
        let s = ev.spectrum(&gamma)?;
        let tau1 = s.tau_a(1);
        let mut members: Vec<&BoundarySample> = Vec::new();
        for sample in samples {
            let w = &sample.ray.word;
            let h = reduce(pres, &gamma_inv.concat(w));
            let slack = gamma.len() + h.len() - w.len();
            if slack <= c {
                members.push(sample);
            }
        }
        if members.len() < 2 {
            continue;
        }
        let mut diam = 0.0f64;
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                diam = diam.max(proj_dist(&members[i].xi, &members[j].xi));
            }
        }
        out.push(ConeImageStat {
            prefix_len: n,
            tau1,
            members: members.len(),
            diameter: diam,
            ratio: diam * tau1.exp(),
        });
    }
    Ok(out)
}

/// Two-scale secant-slope instability: for each index the log-ratio of
/// the nearest-neighbour secant slope to the 4-apart secant slope, None
/// where neighbours are missing or degenerate. `xs`, `ys` are monotone
/// arc-length coordinates (cyclic when `cyclic`).
pub fn two_scale_log_ratios(xs: &[f64], ys: &[f64], cyclic: bool) -> Vec<Option<f64>> {
    let n = xs.len();
    let far = 4usize;
    let mut out = vec![None; n];
    if n < 2 * far + 1 {
        return out;
    }
    let idx = |i: isize| -> Option<usize> {
        if cyclic {
            Some(i.rem_euclid(n as isize) as usize)
        } else if i < 0 || i >= n as isize {
            None
        } else {
            Some(i as usize)
        }
    };
    // cyclic arc-length differences need the total length to unwrap
    let span = |a: usize, b: usize, v: &[f64], total: f64| -> f64 {
        let mut d = v[b] - v[a];
        if cyclic && d < 0.0 {
            d += total;
        }
        d
    };
    let total_x = if cyclic {
        xs[n - 1] - xs[0]
    } else {
        0.0
    };
    let total_y = if cyclic {
        ys[n - 1] - ys[0]
    } else {
        0.0
    };
    for i in 0..n {
        let (Some(l1), Some(r1), Some(l4), Some(r4)) = (
            idx(i as isize - 1),
            idx(i as isize + 1),
            idx(i as isize - far as isize),
            idx(i as isize + far as isize),
        ) else {
            continue;
        };
        let dx1 = span(l1, r1, xs, total_x);
        let dy1 = span(l1, r1, ys, total_y);
        let dx4 = span(l4, r4, xs, total_x);
        let dy4 = span(l4, r4, ys, total_y);
        if dx1 <= 0.0 || dx4 <= 0.0 || dy1 <= 0.0 || dy4 <= 0.0 {
            continue;
        }
        let s1 = dy1 / dx1;
        let s4 = dy4 / dx4;
        out[i] = Some((s1 / s4).ln());
    }
    out
}

#[derive(Clone, Debug)]
pub struct NondiffScan {
    pub log_ratios: Vec<Option<f64>>,
    pub flagged: Vec<usize>,
    pub threshold: f64,
}

/// Flags samples where the secant slope of the graph map is unstable
/// across scales (finite-sample proxy for non-differentiability; the
/// threshold is a choice and sensitivity should be reported).
pub fn nondiff_scan(samples: &[BoundarySample], angle_threshold: f64) -> Result<NondiffScan> {
    let n = samples.len();
    if n < 9 {
        return Err(LabError::WindowTooSmall(
            "nondiff scan needs >= 9 cyclically ordered samples".into(),
        ));
    }
    // cumulative arc-length coordinates along each factor curve
    let mut xs = vec![0.0f64; n];
    let mut ys = vec![0.0f64; n];
    for i in 1..n {
        xs[i] = xs[i - 1] + proj_dist(&samples[i - 1].xi, &samples[i].xi);
        ys[i] = ys[i - 1] + proj_dist(&samples[i - 1].xibar, &samples[i].xibar);
    }
    let log_ratios = two_scale_log_ratios(&xs, &ys, true);
    let flagged = log_ratios
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match r {
            Some(v) if v.abs() > angle_threshold => Some(i),
            _ => None,
        })
        .collect();
    Ok(NondiffScan {
        log_ratios,
        flagged,
        threshold: angle_threshold,
    })
}
