//! The ten run commands. Every artifact carries a metadata header
//! (seed, depth, tolerances, content hash of inputs) and is written
//! atomically; identical config and seed give byte-identical CSVs.

use std::path::PathBuf;

use super::cache::cached_ball_spectra;
use super::emit::{fmt_float, write_atomic, CsvWriter};
use super::{resolve, Resolved, RunConfig};
use crate::anosov::{
    domination_fit, gap_isospectral_check, hyperconvexity_check, limit_cone,
    local_conformal_check, TripleFrame, DEFAULT_DET_FLOOR, DEFAULT_ISO_TOL, DEFAULT_MU_MIN,
};
use crate::error::{LabError, Result};
use crate::exponents::{
    ball_pair_spectra, class_pair_periods, critical_exponent, gap_pair_spectra,
    intersection, phi_infinity, qcurve, qcurve_is_convex, theorem_b_report, ExponentEstimate,
    ExponentMethod, Functional2D, PairSample,
};
use crate::group::conjugacy_reps;
use crate::hausdorff::{
    box_dim, conical_points, eps_ladder, ndiff_dimension, ray_pair_spectra, MetricPointCloud,
    NdiffParams,
};
use crate::limitset::{flag_samples, nondiff_scan, BoundarySample, FlagCurveParams};
use crate::replin::Evaluator;
use crate::svg::{padded_range, SvgPlot};

fn meta(cfg: &RunConfig, r: &Resolved) -> Vec<(&'static str, String)> {
    vec![
        ("rep", cfg.rep.clone()),
        ("repbar", cfg.repbar.clone().unwrap_or_else(|| "-".into())),
        ("depth", cfg.depth.to_string()),
        ("count", cfg.count.to_string()),
        ("beta", fmt_float(cfg.beta)),
        ("seed", cfg.seed.to_string()),
        ("tolerance", fmt_float(cfg.tolerance)),
        ("input_hash", format!("{:016x}", r.input_hash)),
    ]
}

/// Dispatches one command; returns the artifact paths written.
pub fn run(command: &str, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let resolved = resolve(cfg)?;
    match command {
        "ball" => cmd_ball(cfg, &resolved),
        "verify" => cmd_verify(cfg, &resolved),
        "limitset" => cmd_limitset(cfg, &resolved, false),
        "flagcurve" => cmd_limitset(cfg, &resolved, true),
        "qcurve" => cmd_qcurve(cfg, &resolved),
        "entropy" => cmd_entropy(cfg, &resolved),
        "intersection" => cmd_intersection(cfg, &resolved),
        "conical" => cmd_conical(cfg, &resolved),
        "hdim" => cmd_hdim(cfg, &resolved),
        "theoremB" => cmd_theorem_b(cfg, &resolved),
        other => Err(LabError::Grammar(format!("unknown command `{other}`"))),
    }
}

fn cmd_ball(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let records = cached_ball_spectra(
        cfg.cache_dir.as_deref(),
        &r.pres_text,
        &r.pres,
        &r.rep,
        cfg.depth,
    )?;
    let d = r.rep.dim;
    let mut header = vec!["word".to_string(), "len".to_string()];
    for i in 1..=d {
        header.push(format!("a{i}"));
    }
    for i in 1..=d {
        header.push(format!("lambda{i}"));
    }
    for i in 1..d {
        header.push(format!("tau{i}_a"));
    }
    let mut w = CsvWriter::new(
        cfg.out_dir.join("ball.csv"),
        &meta(cfg, r),
        &header.join(","),
    );
    for (word, s) in &records {
        let mut row = vec![
            r.pres.format_word(word).replace(' ', "."),
            word.len().to_string(),
        ];
        row.extend(s.cartan.iter().map(|x| fmt_float(*x)));
        row.extend(s.jordan.iter().map(|x| fmt_float(*x)));
        for i in 1..d {
            row.push(fmt_float(s.tau_a(i)));
        }
        w.row(&row);
    }
    Ok(vec![w.finish()?])
}

fn cmd_verify(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let records = cached_ball_spectra(
        cfg.cache_dir.as_deref(),
        &r.pres_text,
        &r.pres,
        &r.rep,
        cfg.depth,
    )?;
    let spectra: Vec<_> = records.iter().map(|(_, s)| s.clone()).collect();
    let mut report = String::new();
    report.push_str(&format!(
        "anosov verification: rep {} (dim {}), ball({}) = {} elements\n\n",
        cfg.rep,
        r.rep.dim,
        cfg.depth,
        spectra.len()
    ));
    for k in 1..r.rep.dim {
        let fit = domination_fit(&spectra, k, DEFAULT_MU_MIN)?;
        report.push_str(&format!(
            "domination tau_{k}: mu = {:.4}, C = {:.4}, margin = {:.4}, radius {} -> {}\n",
            fit.mu,
            fit.intercept,
            fit.min_margin,
            fit.radius,
            if fit.verdict { "DOMINATED" } else { "NOT DOMINATED" }
        ));
    }
    report.push_str(&format!(
        "local conformality (p=2): max |a_2 - a_2| = {:.3e}\n",
        local_conformal_check(&spectra, 2)
    ));

    let mut artifacts = Vec::new();
    let repbar = r.repbar.clone().unwrap_or_else(|| r.rep.dual());
    let class_radius = cfg.depth.min(6);
    let gap = gap_isospectral_check(
        &r.pres,
        &r.rep,
        &repbar,
        class_radius,
        crate::group::DEFAULT_ELEMENT_CAP,
    )?;
    report.push_str(&format!(
        "gap-isospectrality vs {}: max deviation {:.6e} over {} classes (radius {}), witness {}\n",
        cfg.repbar.as_deref().unwrap_or("dual"),
        gap.max_deviation,
        gap.classes,
        gap.radius,
        r.pres.format_word(&gap.witness),
    ));
    report.push_str(&format!(
        "  -> {} at tolerance {:.1e}\n",
        if gap.max_deviation < DEFAULT_ISO_TOL {
            "GAP-ISOSPECTRAL"
        } else {
            "NOT gap-isospectral"
        },
        DEFAULT_ISO_TOL
    ));

    // per-class CSV
    let reps = conjugacy_reps(&r.pres, class_radius, crate::group::DEFAULT_ELEMENT_CAP, false)?;
    let mut ev = Evaluator::new(&r.rep);
    let mut evb = Evaluator::new(&repbar);
    let mut w = CsvWriter::new(
        cfg.out_dir.join("isospectral.csv"),
        &meta(cfg, r),
        "class,len,tau1_rho,tau1_rhobar,deviation",
    );
    for word in &reps {
        let s = ev.spectrum(word)?;
        let sb = evb.spectrum(word)?;
        w.row(&[
            r.pres.format_word(word).replace(' ', "."),
            word.len().to_string(),
            fmt_float(s.tau_lambda(1)),
            fmt_float(sb.tau_lambda(1)),
            fmt_float((s.tau_lambda(1) - sb.tau_lambda(1)).abs()),
        ]);
    }
    artifacts.push(w.finish()?);

    // hyperconvexity over sampled flag triples (p = 2)
    let params = FlagCurveParams {
        count: cfg.count.min(800),
        depth: cfg.depth.max(16),
        seed: cfg.seed,
        ..Default::default()
    };
    let samples = flag_samples(&r.pres, &r.rep, &repbar, &r.ordering, &params)?;
    let frames: Vec<TripleFrame> = samples
        .iter()
        .filter(|s| s.converged)
        .map(|s| TripleFrame {
            xi: s.xi.0.clone(),
            frame_top: nalgebra::DMatrix::from_column_slice(
                r.rep.dim,
                1,
                s.xi.0.as_slice(),
            ),
            order_key: s.order_key,
        })
        .collect();
    let hc = hyperconvexity_check(&frames, 2, DEFAULT_DET_FLOOR, 10_000, cfg.seed)?;
    report.push_str(&format!(
        "hyperconvexity (1,1,2): min normalized det {:.3e} over {} triples ({} coincident skipped) -> {} [{}]\n",
        hc.min_det,
        hc.triples,
        hc.skipped_coincident,
        if hc.verdict { "PASS" } else { "FAIL" },
        hc.caveat
    ));

    // limit cone from class periods
    let mut class_spectra = Vec::new();
    for word in &reps {
        class_spectra.push(ev.spectrum(word)?);
    }
    let cone = limit_cone(&class_spectra);
    report.push_str(&format!(
        "limit cone: {} period points, gap-plane hull area {:.6e} ({} elliptic skipped)\n",
        cone.points.len(),
        cone.hull_area,
        cone.skipped_elliptic
    ));
    let path = cfg.out_dir.join("verify.txt");
    write_atomic(&path, report.as_bytes())?;
    artifacts.push(path);
    Ok(artifacts)
}

fn sample_flags(s: &BoundarySample) -> &'static str {
    if s.converged {
        "ok"
    } else {
        "unconverged"
    }
}

fn cmd_limitset(cfg: &RunConfig, r: &Resolved, with_bar: bool) -> Result<Vec<PathBuf>> {
    let repbar = r.repbar.clone().unwrap_or_else(|| r.rep.dual());
    let params = FlagCurveParams {
        count: cfg.count,
        depth: cfg.depth,
        seed: cfg.seed,
        ..Default::default()
    };
    let samples = flag_samples(&r.pres, &r.rep, &repbar, &r.ordering, &params)?;
    let d = r.rep.dim;
    let db = repbar.dim;
    let mut header = vec!["orderKey".to_string(), "rayPrefix".to_string()];
    for i in 0..d {
        header.push(format!("xi_{i}"));
    }
    if with_bar {
        for i in 0..db {
            header.push(format!("xibar_{i}"));
        }
    }
    header.push("convergence".into());
    header.push("flags".into());
    let name = if with_bar { "flagcurve.csv" } else { "limitset.csv" };
    let mut w = CsvWriter::new(cfg.out_dir.join(name), &meta(cfg, r), &header.join(","));
    for s in &samples {
        let mut row = vec![
            fmt_float(s.order_key),
            r.pres.format_word(&s.ray.word).replace(' ', "."),
        ];
        row.extend(s.xi.0.iter().map(|x| fmt_float(*x)));
        if with_bar {
            row.extend(s.xibar.0.iter().map(|x| fmt_float(*x)));
        }
        row.push(fmt_float(s.convergence.max(s.convergence_bar)));
        row.push(sample_flags(s).to_string());
        w.row(&row);
    }
    let csv_path = w.finish()?;

    // SVG of the xi-curve in its best affine chart, flagged points marked
    let cloud = MetricPointCloud::single(
        samples.iter().map(|s| s.xi.0.iter().cloned().collect()).collect(),
        d,
    );
    let coords = cloud.chart_coordinates();
    let scan = nondiff_scan(&samples, 2f64.ln()).ok();
    let xr = padded_range(coords.iter().map(|c| c[0]));
    let yr = padded_range(coords.iter().map(|c| c.get(1).cloned().unwrap_or(0.0)));
    let mut plot = SvgPlot::new(640.0, 640.0, xr, yr);
    for (i, c) in coords.iter().enumerate() {
        let y = c.get(1).cloned().unwrap_or(0.0);
        let flagged = scan
            .as_ref()
            .map(|sc| sc.flagged.contains(&i))
            .unwrap_or(false);
        plot.dot(c[0], y, if flagged { 2.5 } else { 1.2 }, if flagged { "red" } else { "black" });
    }
    let svg = plot.finish(&format!("limit curve: {} ({} samples)", cfg.rep, samples.len()));
    let svg_path = cfg.out_dir.join(if with_bar { "flagcurve.svg" } else { "limitset.svg" });
    write_atomic(&svg_path, svg.as_bytes())?;
    Ok(vec![csv_path, svg_path])
}

fn entropy_pairs(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PairSample>> {
    match &r.repbar {
        Some(rb) => ball_pair_spectra(
            &r.pres,
            &r.rep,
            rb,
            cfg.depth,
            crate::group::DEFAULT_ELEMENT_CAP,
        ),
        None => gap_pair_spectra(&r.pres, &r.rep, cfg.depth, crate::group::DEFAULT_ELEMENT_CAP),
    }
}

fn phi_values(cfg: &RunConfig, pairs: &[PairSample]) -> Result<Vec<(usize, f64)>> {
    let f = |phi: Functional2D| -> Vec<(usize, f64)> {
        pairs.iter().map(|p| (p.len, phi.eval(p))).collect()
    };
    Ok(match cfg.phi.as_str() {
        "tau1" => f(Functional2D::new(1.0, 0.0)),
        "tau2" | "taubar1" => f(Functional2D::new(0.0, 1.0)),
        "hilbert" => f(Functional2D::new(0.5, 0.5)),
        "max" => pairs
            .iter()
            .map(|p| (p.len, (cfg.beta * p.t1).max(p.t2)))
            .collect(),
        "min" => pairs.iter().map(|p| (p.len, p.t1.min(p.t2))).collect(),
        other => {
            return Err(LabError::Grammar(format!(
                "unknown phi `{other}` (tau1|tau2|hilbert|max|min)"
            )))
        }
    })
}

fn cmd_entropy(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let pairs = entropy_pairs(cfg, r)?;
    let values = phi_values(cfg, &pairs)?;
    let slope = crate::exponents::critical_exponent_of_values(
        &values,
        ExponentMethod::SlopeFit,
        cfg.window,
        None,
    );
    let root = crate::exponents::critical_exponent_of_values(
        &values,
        ExponentMethod::PoincareRoot,
        cfg.window,
        None,
    );
    let mut w = CsvWriter::new(
        cfg.out_dir.join("entropy.csv"),
        &meta(cfg, r),
        "phi,method,value,residual,window_lo,window_hi,count",
    );
    let emit_est = |est: &ExponentEstimate, method: &str, w: &mut CsvWriter| {
        w.row(&[
            cfg.phi.clone(),
            method.to_string(),
            fmt_float(est.value),
            fmt_float(est.residual),
            fmt_float(est.window.0),
            fmt_float(est.window.1),
            est.count.to_string(),
        ]);
    };
    let mut report = format!("entropy of phi = {} for {}\n", cfg.phi, cfg.rep);
    let mut headline = None;
    if let Ok(est) = &slope {
        emit_est(est, "slope-fit", &mut w);
        report.push_str(&format!(
            "slope-fit:     {:.4} (stderr {:.4}, window {:.2}..{:.2}, {} pts)\n",
            est.value, est.residual, est.window.0, est.window.1, est.count
        ));
        headline = Some(est.value);
    }
    if let Ok(est) = &root {
        emit_est(est, "poincare-root", &mut w);
        report.push_str(&format!(
            "poincare-root: {:.4} (bracket +-{:.1e})\n",
            est.value, est.residual
        ));
    }
    match (&slope, &root) {
        (Ok(a), Ok(b)) => {
            report.push_str(&format!(
                "cross-validation discrepancy (systematic error): {:.4}\n",
                (a.value - b.value).abs()
            ));
        }
        (Err(e), _) => report.push_str(&format!("slope-fit failed: {e}\n")),
        (_, Err(e)) => report.push_str(&format!("poincare-root failed: {e}\n")),
    }
    if headline.is_none() && root.is_err() {
        // surface the slope error as the command failure
        slope?;
    }
    let csv = w.finish()?;
    let path = cfg.out_dir.join("entropy.txt");
    write_atomic(&path, report.as_bytes())?;
    Ok(vec![csv, path])
}

fn cmd_qcurve(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let pairs = entropy_pairs(cfg, r)?;
    let angles: Vec<f64> = (1..=30)
        .map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / 31.0)
        .collect();
    let estimate =
        |theta: f64, pairs: &[PairSample]| -> Option<crate::exponents::QCurvePoint> {
            let phi = Functional2D::new(theta.cos(), theta.sin());
            critical_exponent(&phi, pairs, cfg.method, cfg.window, None)
                .ok()
                .map(|est| crate::exponents::QCurvePoint {
                    theta,
                    s: est.value * theta.cos(),
                    u: est.value * theta.sin(),
                    h_raw: est.value,
                    residual: est.residual,
                    tangent: (0.0, 0.0),
                })
        };
    let (pts, skipped) = match cfg.method {
        ExponentMethod::SlopeFit => qcurve(&pairs, &angles, cfg.window, None),
        ExponentMethod::PoincareRoot => {
            let mut pts = Vec::new();
            let mut skipped = Vec::new();
            for &th in &angles {
                match estimate(th, &pairs) {
                    Some(p) => pts.push(p),
                    None => skipped.push((th, "estimate failed".to_string())),
                }
            }
            // tangents by central differences
            let n = pts.len();
            for i in 0..n {
                let (a, b) = if i == 0 {
                    (0, 1.min(n - 1))
                } else if i == n - 1 {
                    (n - 2, n - 1)
                } else {
                    (i - 1, i + 1)
                };
                let dx = pts[b].s - pts[a].s;
                let dy = pts[b].u - pts[a].u;
                let norm = (dx * dx + dy * dy).sqrt();
                if norm > 0.0 {
                    pts[i].tangent = (dx / norm, dy / norm);
                }
            }
            (pts, skipped)
        }
    };
    let mut w = CsvWriter::new(
        cfg.out_dir.join("qcurve.csv"),
        &meta(cfg, r),
        "theta,s,u,h_raw,h_scaled,tangent_s,tangent_u",
    );
    for p in &pts {
        w.row(&[
            fmt_float(p.theta),
            fmt_float(p.s),
            fmt_float(p.u),
            fmt_float(p.h_raw),
            fmt_float(1.0),
            fmt_float(p.tangent.0),
            fmt_float(p.tangent.1),
        ]);
    }
    let csv = w.finish()?;
    let mut report = format!(
        "critical hypersurface: {} points, {} skipped, convex: {}\n",
        pts.len(),
        skipped.len(),
        qcurve_is_convex(&pts, 1e-4)
    );
    for (th, reason) in &skipped {
        report.push_str(&format!("  skipped theta={th:.3}: {reason}\n"));
    }
    let mut re = |theta: f64| estimate(theta, &pairs);
    match phi_infinity(&pts, cfg.beta, Some(&mut re)) {
        Ok(res) => {
            report.push_str(&format!(
                "phi_infinity(beta={}): s={:.4} u={:.4} norm={:.4} theta={:.4} tangent=({:.3},{:.3}){}\n",
                cfg.beta,
                res.functional.s,
                res.functional.u,
                res.norm,
                res.theta,
                res.tangent.0,
                res.tangent.1,
                if res.inconclusive {
                    " INCONCLUSIVE (endpoint minimizer)"
                } else {
                    ""
                }
            ));
        }
        Err(e) => report.push_str(&format!("phi_infinity failed: {e}\n")),
    }
    // SVG of the curve
    let xr = padded_range(pts.iter().map(|p| p.s).chain(std::iter::once(0.0)));
    let yr = padded_range(pts.iter().map(|p| p.u).chain(std::iter::once(0.0)));
    let mut plot = SvgPlot::new(480.0, 480.0, xr, yr);
    plot.polyline(
        &pts.iter().map(|p| (p.s, p.u)).collect::<Vec<_>>(),
        "black",
        1.0,
    );
    for p in &pts {
        plot.dot(p.s, p.u, 1.5, "blue");
    }
    let svg_path = cfg.out_dir.join("qcurve.svg");
    write_atomic(&svg_path, plot.finish("critical hypersurface Q").as_bytes())?;
    let path = cfg.out_dir.join("qcurve.txt");
    write_atomic(&path, report.as_bytes())?;
    Ok(vec![csv, svg_path, path])
}

fn cmd_intersection(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let repbar = r.repbar.clone().unwrap_or_else(|| r.rep.dual());
    let class_radius = cfg.depth.min(10);
    let pairs = class_pair_periods(
        &r.pres,
        &r.rep,
        &repbar,
        class_radius,
        crate::group::DEFAULT_ELEMENT_CAP,
    )?;
    let t_max = pairs.iter().map(|p| p.t1).fold(0.0f64, f64::max);
    let mut w = CsvWriter::new(
        cfg.out_dir.join("intersection.csv"),
        &meta(cfg, r),
        "t,count,I_tau_taubar",
    );
    let mut last = None;
    for i in 1..=12 {
        let t = t_max * i as f64 / 12.0;
        if let Ok(est) = intersection(&pairs, t) {
            w.row(&[fmt_float(t), est.count.to_string(), fmt_float(est.value)]);
            last = Some(est);
        }
    }
    let csv = w.finish()?;
    let est = last.ok_or_else(|| LabError::WindowTooSmall("no nonempty R_t".into()))?;
    let report = format!(
        "dynamical intersection I_tau(taubar) = {:.5} over {} classes up to t = {:.3} (class radius {})\n",
        est.value, est.count, est.t, class_radius
    );
    let path = cfg.out_dir.join("intersection.txt");
    write_atomic(&path, report.as_bytes())?;
    Ok(vec![csv, path])
}

fn cmd_conical(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let repbar = r.repbar.clone().unwrap_or_else(|| r.rep.dual());
    let params = FlagCurveParams {
        count: cfg.count,
        depth: cfg.depth,
        seed: cfg.seed,
        ..Default::default()
    };
    let samples = flag_samples(&r.pres, &r.rep, &repbar, &r.ordering, &params)?;
    let rays = ray_pair_spectra(&samples, &r.rep, &repbar)?;
    let rvalue = cfg.rvalue.unwrap_or_else(|| {
        2.0 * crate::hausdorff::generator_step_bound(&r.rep)
            .max(crate::hausdorff::generator_step_bound(&repbar))
    });
    let window = (cfg.depth / 3).max(2)..=cfg.depth;
    let verdicts = conical_points(&rays, cfg.beta, rvalue, window, 3);
    let mut w = CsvWriter::new(
        cfg.out_dir.join("conical.csv"),
        &meta(cfg, r),
        "sample,orderKey,hitCount,verdict",
    );
    let mut flagged = 0usize;
    for v in &verdicts {
        if v.verdict {
            flagged += 1;
        }
        w.row(&[
            v.sample.to_string(),
            fmt_float(samples[v.sample].order_key),
            v.hits.len().to_string(),
            (v.verdict as u8).to_string(),
        ]);
    }
    let csv = w.finish()?;
    let report = format!(
        "beta-conical scan: beta={} R={:.3} window=[{},{}] -> {}/{} flagged ({:.1}%)\n",
        cfg.beta,
        rvalue,
        (cfg.depth / 3).max(2),
        cfg.depth,
        flagged,
        verdicts.len(),
        100.0 * flagged as f64 / verdicts.len().max(1) as f64
    );
    let path = cfg.out_dir.join("conical.txt");
    write_atomic(&path, report.as_bytes())?;
    Ok(vec![csv, path])
}

fn synthetic_cloud(kind: &str, n: usize, seed: u64) -> Result<MetricPointCloud> {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = match kind {
        "segment" => (0..n)
            .map(|_| {
                let t: f64 = rng.gen_range(-0.8..0.8);
                let norm = (1.0 + t * t).sqrt();
                vec![1.0 / norm, t / norm, 0.0]
            })
            .collect(),
        "cantor" => (0..n)
            .map(|_| {
                let mut x = 0.0f64;
                let mut w = 1.0 / 3.0;
                for _ in 0..30 {
                    x += if rng.gen_bool(0.5) { 0.0 } else { 2.0 } * w;
                    w /= 3.0;
                }
                let t = x - 0.5;
                let norm = (1.0 + t * t).sqrt();
                vec![1.0 / norm, t / norm, 0.0]
            })
            .collect(),
        other => {
            return Err(LabError::Grammar(format!(
                "unknown synthetic cloud `{other}`"
            )))
        }
    };
    Ok(MetricPointCloud::single(pts, 3))
}

fn cloud_from_csv(path: &str) -> Result<MetricPointCloud> {
    let text = std::fs::read_to_string(path)?;
    let mut header: Option<Vec<String>> = None;
    let mut xi_cols = Vec::new();
    let mut xibar_cols = Vec::new();
    let mut points = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            let cols: Vec<String> = line.split(',').map(|s| s.to_string()).collect();
            for (i, c) in cols.iter().enumerate() {
                if c.starts_with("xi_") {
                    xi_cols.push(i);
                } else if c.starts_with("xibar_") {
                    xibar_cols.push(i);
                }
            }
            if xi_cols.is_empty() {
                return Err(LabError::Grammar("CSV has no xi_* columns".into()));
            }
            header = Some(cols);
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let mut coords = Vec::new();
        for &i in xi_cols.iter().chain(&xibar_cols) {
            coords.push(
                fields
                    .get(i)
                    .and_then(|f| f.parse::<f64>().ok())
                    .ok_or_else(|| LabError::Grammar("bad CSV number".into()))?,
            );
        }
        points.push(coords);
    }
    if xibar_cols.is_empty() {
        Ok(MetricPointCloud::single(points, xi_cols.len()))
    } else {
        Ok(MetricPointCloud::product(
            points,
            xi_cols.len(),
            xibar_cols.len(),
        ))
    }
}

fn cmd_hdim(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let spec = cfg.cloud.clone().unwrap_or_else(|| "synthetic:segment".into());
    let cloud = if let Some(kind) = spec.strip_prefix("synthetic:") {
        synthetic_cloud(kind, cfg.count.max(5000), cfg.seed)?
    } else {
        cloud_from_csv(&spec)?
    };
    let eps = eps_ladder(0.3, 0.003, 10);
    let rep = box_dim(&cloud, &eps, 5, cfg.seed)?;
    let mut w = CsvWriter::new(
        cfg.out_dir.join("hdim.csv"),
        &meta(cfg, r),
        "eps,N_eps_mean",
    );
    for &(e, n) in &rep.counts {
        w.row(&[fmt_float(e), fmt_float(n)]);
    }
    let csv = w.finish()?;
    let mut report = format!(
        "box dimension of {spec}: {:.4} (stderr {:.4}, {} points, {} scales trimmed)\nlocal slopes:",
        rep.slope,
        rep.stderr,
        cloud.len(),
        rep.trimmed
    );
    for s in &rep.local_slopes {
        report.push_str(&format!(" {s:.3}"));
    }
    report.push('\n');
    // log-log SVG
    let xs: Vec<f64> = rep.counts.iter().map(|(e, _)| -(e.ln())).collect();
    let ys: Vec<f64> = rep.counts.iter().map(|(_, n)| n.ln()).collect();
    let mut plot = SvgPlot::new(
        480.0,
        360.0,
        padded_range(xs.iter().cloned()),
        padded_range(ys.iter().cloned()),
    );
    plot.polyline(
        &xs.iter().cloned().zip(ys.iter().cloned()).collect::<Vec<_>>(),
        "blue",
        1.0,
    );
    for (&x, &y) in xs.iter().zip(&ys) {
        plot.dot(x, y, 2.0, "black");
    }
    let svg_path = cfg.out_dir.join("hdim.svg");
    write_atomic(
        &svg_path,
        plot.finish(&format!("log N vs log 1/eps (slope {:.3})", rep.slope))
            .as_bytes(),
    )?;
    let path = cfg.out_dir.join("hdim.txt");
    write_atomic(&path, report.as_bytes())?;
    Ok(vec![csv, svg_path, path])
}

fn cmd_theorem_b(cfg: &RunConfig, r: &Resolved) -> Result<Vec<PathBuf>> {
    let repbar = r.repbar.clone().unwrap_or_else(|| r.rep.dual());
    let report = theorem_b_report(
        &r.pres,
        &r.rep,
        &repbar,
        cfg.beta,
        cfg.depth,
        cfg.depth.min(8),
        crate::group::DEFAULT_ELEMENT_CAP,
        cfg.window,
        None,
        DEFAULT_ISO_TOL,
    )?;
    let mut w = CsvWriter::new(
        cfg.out_dir.join("theoremB.csv"),
        &meta(cfg, r),
        "check,lhs,rhs,tolerance,pass",
    );
    for c in &report.checks {
        w.row(&[
            c.name.replace(',', ";"),
            fmt_float(c.lhs),
            fmt_float(c.rhs),
            fmt_float(c.tolerance),
            (c.pass as u8).to_string(),
        ]);
    }
    let csv = w.finish()?;
    let mut text = String::new();
    text.push_str(&format!(
        "Theorem B chain at beta = {} for {} vs {}\n",
        report.beta,
        cfg.rep,
        cfg.repbar.as_deref().unwrap_or("dual")
    ));
    text.push_str(&format!(
        "gap deviation {:.4e} (not gap-isospectral)\n",
        report.gap_deviation
    ));
    text.push_str(&format!(
        "h_tau = {:.4}, h_taubar = {:.4}, h_inf = {:.4}\n",
        report.h_tau.value, report.h_taubar.value, report.h_inf.value
    ));
    text.push_str(&format!(
        "I_tau(taubar) = {:.4}, I_taubar(tau) = {:.4}, bracket I > beta > 1/I: {}\n",
        report.i_tau_taubar.value, report.i_taubar_tau.value, report.bracket_ok
    ));
    for c in &report.checks {
        text.push_str(&format!(
            "  [{}] {} : {:.4} vs {:.4} (tol {:.1e})\n",
            if c.pass { "pass" } else { "FAIL" },
            c.name,
            c.lhs,
            c.rhs,
            c.tolerance
        ));
    }
    // Theorem B-prime pipeline: box dimension of the 1-conical subset
    let params = NdiffParams {
        sample_budget: cfg.count,
        depth: cfg.depth.max(24),
        ball_radius: cfg.depth,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        ..Default::default()
    };
    match ndiff_dimension(&r.pres, &r.rep, &repbar, &r.ordering, &params) {
        Ok(nd) => {
            text.push_str(&format!(
                "ndiff: {}/{} samples 1-conical (R = {:.3}); box dim of flagged subset = {:.4} (stderr {:.4}); h_inf(1) = {:.4}; |diff| = {:.4} -> {}\n",
                nd.flagged,
                nd.total,
                nd.conical_r,
                nd.box_dim_flagged.slope,
                nd.box_dim_flagged.stderr,
                nd.h_inf_one.value,
                nd.agreement,
                if nd.verdict { "AGREE" } else { "DISAGREE" }
            ));
        }
        Err(e) => text.push_str(&format!("ndiff pipeline: {e}\n")),
    }
    let path = cfg.out_dir.join("theoremB.txt");
    write_atomic(&path, text.as_bytes())?;
    Ok(vec![csv, path])
}
