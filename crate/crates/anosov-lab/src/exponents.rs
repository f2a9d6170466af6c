//! Counting-based critical exponents, the critical hypersurface in
//! span{tau, taubar}, the norm-minimizing functional, the dynamical
//! intersection and the full inequality-chain report.
//!
//! Two estimators are kept deliberately independent: a least-squares
//! slope of log N(t), and a Dirichlet-series root located by a
//! divergence ratio test. The headline value is the slope fit; the
//! discrepancy between the two is the systematic-error handle.

use crate::anosov::gap_isospectral_check;
use crate::error::{LabError, Result};
use crate::group::{ball, conjugacy_reps, Presentation};
use crate::replin::{Evaluator, Representation};

pub const DEFAULT_WINDOW: (f64, f64) = (0.3, 0.9);
pub const ISO_REFUSAL_FACTOR: f64 = 10.0;

/// A paired spectral value for one group element: t1 under rho, t2
/// under rhobar (Cartan gaps for ball streams, Jordan gaps for class
/// streams).
#[derive(Clone, Copy, Debug)]
pub struct PairSample {
    pub len: usize,
    pub t1: f64,
    pub t2: f64,
}

/// tau_1(a(.)) pairs over a ball.
pub fn ball_pair_spectra(
    pres: &Presentation,
    rep: &Representation,
    repbar: &Representation,
    radius: usize,
    cap: usize,
) -> Result<Vec<PairSample>> {
    let b = ball(pres, radius, cap)?;
    let mut ev = Evaluator::new(rep);
    let mut evb = Evaluator::new(repbar);
    let mut out = Vec::with_capacity(b.len());
    for w in &b {
        let s = ev.spectrum(w)?;
        let sb = evb.spectrum(w)?;
        out.push(PairSample {
            len: w.len(),
            t1: s.tau_a(1),
            t2: sb.tau_a(1),
        });
    }
    Ok(out)
}

/// (tau_1, tau_2) Cartan pairs of a single d=3 representation: the
/// coordinates of span{tau_1, tau_2} computations (dual pairing).
pub fn gap_pair_spectra(
    pres: &Presentation,
    rep: &Representation,
    radius: usize,
    cap: usize,
) -> Result<Vec<PairSample>> {
    let b = ball(pres, radius, cap)?;
    let mut ev = Evaluator::new(rep);
    let mut out = Vec::with_capacity(b.len());
    for w in &b {
        let s = ev.spectrum(w)?;
        out.push(PairSample {
            len: w.len(),
            t1: s.tau_a(1),
            t2: s.tau_a(2),
        });
    }
    Ok(out)
}

/// tau_1(lambda(.)) pairs over conjugacy-class representatives;
/// elliptic classes (vanishing periods) are dropped.
pub fn class_pair_periods(
    pres: &Presentation,
    rep: &Representation,
    repbar: &Representation,
    n: usize,
    cap: usize,
) -> Result<Vec<PairSample>> {
    let reps = conjugacy_reps(pres, n, cap, false)?;
    let mut ev = Evaluator::new(rep);
    let mut evb = Evaluator::new(repbar);
    let mut out = Vec::new();
    for w in &reps {
        let s = ev.spectrum(w)?;
        let sb = evb.spectrum(w)?;
        let t1 = s.tau_lambda(1);
        let t2 = sb.tau_lambda(1);
        if t1 < 1e-9 && t2 < 1e-9 {
            continue;
        }
        out.push(PairSample {
            len: w.len(),
            t1,
            t2,
        });
    }
    Ok(out)
}

/// Linear functional phi = s tau + u taubar on pair samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Functional2D {
    pub s: f64,
    pub u: f64,
}

impl Functional2D {
    pub fn new(s: f64, u: f64) -> Functional2D {
        assert!(s != 0.0 || u != 0.0);
        Functional2D { s, u }
    }

    pub fn eval(&self, p: &PairSample) -> f64 {
        self.s * p.t1 + self.u * p.t2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentMethod {
    SlopeFit,
    PoincareRoot,
}

#[derive(Clone, Debug)]
pub struct ExponentEstimate {
    pub value: f64,
    pub method: ExponentMethod,
    /// fitted t-window (slope fit) or final bracket (root method)
    pub window: (f64, f64),
    /// regression standard error of the slope, or half bracket width
    pub residual: f64,
    pub count: usize,
}

/// Critical exponent of precomputed per-element values `(len, phi)`.
///
/// `t_cap` truncation-safe upper bound (from the domination fit mu N - C)
/// caps the fit window so elements missed beyond the enumeration radius
/// cannot bias the count.
pub fn critical_exponent_of_values(
    values: &[(usize, f64)],
    method: ExponentMethod,
    window: (f64, f64),
    t_cap: Option<f64>,
) -> Result<ExponentEstimate> {
    let violations = values.iter().filter(|(_, v)| *v <= 0.0).count();
    if violations > 32 {
        return Err(LabError::PositivityViolation { violations });
    }
    let levels = values.iter().map(|(l, _)| *l).max().unwrap_or(0);
    if levels < 5 {
        return Err(LabError::WindowTooSmall(format!(
            "{levels} sphere levels < 5"
        )));
    }
    match method {
        ExponentMethod::SlopeFit => slope_fit(values, window, t_cap),
        ExponentMethod::PoincareRoot => poincare_root(values),
    }
}

fn slope_fit(
    values: &[(usize, f64)],
    window: (f64, f64),
    t_cap: Option<f64>,
) -> Result<ExponentEstimate> {
    let mut ts: Vec<f64> = values
        .iter()
        .map(|&(_, v)| v)
        .filter(|v| v.is_finite() && *v > 0.0)
        .collect();
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if ts.is_empty() {
        return Err(LabError::WindowTooSmall("no positive values".into()));
    }
    let t_max = ts[ts.len() - 1].min(t_cap.unwrap_or(f64::INFINITY));
    let (lo, hi) = (window.0 * t_max, window.1 * t_max);
    // points of the empirical counting function inside the window
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, &t) in ts.iter().enumerate() {
        if t >= lo && t <= hi {
            xs.push(t);
            ys.push(((i + 1) as f64).ln());
        }
    }
    if xs.len() < 8 {
        return Err(LabError::WindowTooSmall(format!(
            "{} counting points in window [{lo:.2}, {hi:.2}]",
            xs.len()
        )));
    }
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
    let stderr = (resid / (n - 2.0) / sxx).sqrt();
    if slope <= 0.0 {
        return Err(LabError::NumericConvergence(format!(
            "nonpositive growth slope {slope:.3e}"
        )));
    }
    Ok(ExponentEstimate {
        value: slope,
        method: ExponentMethod::SlopeFit,
        window: (lo, hi),
        residual: stderr,
        count: xs.len(),
    })
}

/// Divergence test: increments of the truncated Dirichlet series across
/// the last level pairs grow when s is below the abscissa.
fn series_diverges(values: &[(usize, f64)], s: f64, levels: usize) -> bool {
    let mut inc = vec![0.0f64; levels + 1];
    for &(l, v) in values {
        if l >= 1 {
            inc[l] += (-s * v).exp();
        }
    }
    let last = inc[levels] + inc[levels - 1];
    let prev = inc[levels - 2] + inc[levels - 3];
    last >= prev
}

fn poincare_root(values: &[(usize, f64)]) -> Result<ExponentEstimate> {
    let levels = values.iter().map(|(l, _)| *l).max().unwrap();
    if levels < 5 {
        return Err(LabError::WindowTooSmall("poincare root needs 5 levels".into()));
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut grow = 0;
    while series_diverges(values, hi, levels) {
        lo = hi;
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(LabError::NumericConvergence(
                "series diverges for all tested exponents".into(),
            ));
        }
    }
    if lo == 0.0 && !series_diverges(values, 1e-8, levels) {
        return Err(LabError::NumericConvergence(
            "series already summable at s ~ 0".into(),
        ));
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if series_diverges(values, mid, levels) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ExponentEstimate {
        value: 0.5 * (lo + hi),
        method: ExponentMethod::PoincareRoot,
        window: (lo, hi),
        residual: 0.5 * (hi - lo),
        count: values.len(),
    })
}

/// Critical exponent of a linear functional on pair spectra.
pub fn critical_exponent(
    phi: &Functional2D,
    pairs: &[PairSample],
    method: ExponentMethod,
    window: (f64, f64),
    t_cap: Option<f64>,
) -> Result<ExponentEstimate> {
    let vals: Vec<(usize, f64)> = pairs.iter().map(|p| (p.len, phi.eval(p))).collect();
    critical_exponent_of_values(&vals, method, window, t_cap)
}

/// h_{infinity, beta}: critical exponent of max{beta tau, taubar}.
pub fn hinf(
    beta: f64,
    pairs: &[PairSample],
    method: ExponentMethod,
    window: (f64, f64),
    t_cap: Option<f64>,
) -> Result<ExponentEstimate> {
    assert!(beta > 0.0 && beta <= 1.0, "beta in (0,1]");
    let vals: Vec<(usize, f64)> = pairs
        .iter()
        .map(|p| (p.len, (beta * p.t1).max(p.t2)))
        .collect();
    critical_exponent_of_values(&vals, method, window, t_cap)
}

/// One point of the critical hypersurface: the functional in direction
/// theta rescaled to entropy 1.
#[derive(Clone, Debug)]
pub struct QCurvePoint {
    pub theta: f64,
    pub s: f64,
    pub u: f64,
    pub h_raw: f64,
    pub residual: f64,
    /// unit tangent estimate in (s, u) coordinates, filled by qcurve
    pub tangent: (f64, f64),
}

/// Samples the critical hypersurface Q = {phi : h_phi = 1} along
/// directions phi_theta = cos(theta) tau + sin(theta) taubar. Directions
/// failing positivity are skipped with the reason collected.
pub fn qcurve(
    pairs: &[PairSample],
    angles: &[f64],
    window: (f64, f64),
    t_cap: Option<f64>,
) -> (Vec<QCurvePoint>, Vec<(f64, String)>) {
    let mut pts = Vec::new();
    let mut skipped = Vec::new();
    for &theta in angles {
        let phi = Functional2D::new(theta.cos(), theta.sin());
        match critical_exponent(&phi, pairs, ExponentMethod::SlopeFit, window, t_cap) {
            Ok(est) => pts.push(QCurvePoint {
                theta,
                s: est.value * theta.cos(),
                u: est.value * theta.sin(),
                h_raw: est.value,
                residual: est.residual,
                tangent: (0.0, 0.0),
            }),
            Err(e) => skipped.push((theta, e.to_string())),
        }
    }
    // central-difference tangents
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

/// Convexity check of the sampled curve: all consecutive cross products
/// share a sign within tolerance.
pub fn qcurve_is_convex(pts: &[QCurvePoint], tol: f64) -> bool {
    if pts.len() < 3 {
        return true;
    }
    let mut sign = 0.0f64;
    for w in pts.windows(3) {
        let ax = w[1].s - w[0].s;
        let ay = w[1].u - w[0].u;
        let bx = w[2].s - w[1].s;
        let by = w[2].u - w[1].u;
        let cross = ax * by - ay * bx;
        if cross.abs() <= tol {
            continue;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct PhiInfinity {
    pub functional: Functional2D,
    pub norm: f64,
    pub tangent: (f64, f64),
    pub theta: f64,
    /// true when the minimizer sits at an end of the sampled arc, i.e.
    /// the convex-combination bracket is likely violated
    pub inconclusive: bool,
}

/// Minimizes the dual norm ||s tau + u taubar||^{1,beta} = |s|/beta + |u|
/// over the sampled critical hypersurface, optionally refining by
/// golden-section in direction angle with `reestimate`.
pub fn phi_infinity(
    pts: &[QCurvePoint],
    beta: f64,
    mut reestimate: Option<&mut dyn FnMut(f64) -> Option<QCurvePoint>>,
) -> Result<PhiInfinity> {
    if pts.len() < 8 {
        return Err(LabError::WindowTooSmall(
            "phi_infinity needs >= 8 hypersurface points".into(),
        ));
    }
    let cost = |p: &QCurvePoint| p.s.abs() / beta + p.u.abs();
    let mut best = 0usize;
    for (i, p) in pts.iter().enumerate() {
        if cost(p) < cost(&pts[best]) {
            best = i;
        }
    }
    // Degenerate flats (gap-isospectral data makes Q a straight segment
    // of constant norm): the minimizer must inherit the symmetries of
    // the data, so ties are broken toward the opposition-invariant
    // (most diagonal) point.
    let tie_tol = 2.0 * pts.iter().map(|p| p.residual).fold(0.0f64, f64::max) + 1e-12;
    let min_cost = cost(&pts[best]);
    for (i, p) in pts.iter().enumerate() {
        if cost(p) <= min_cost + tie_tol
            && (p.s - p.u).abs() < (pts[best].s - pts[best].u).abs()
        {
            best = i;
        }
    }
    let at_end = best == 0 || best == pts.len() - 1;
    let mut minimizer = pts[best].clone();
    if !at_end {
        if let Some(re) = reestimate.as_mut() {
            // golden-section on theta between the neighbours
            let mut a = pts[best - 1].theta;
            let mut b = pts[best + 1].theta;
            let gr = (5f64.sqrt() - 1.0) / 2.0;
            let mut x1 = b - gr * (b - a);
            let mut x2 = a + gr * (b - a);
            let mut f1 = re(x1).map(|p| (cost(&p), p));
            let mut f2 = re(x2).map(|p| (cost(&p), p));
            for _ in 0..24 {
                match (&f1, &f2) {
                    (Some((c1, _)), Some((c2, _))) => {
                        if c1 < c2 {
                            b = x2;
                            x2 = x1;
                            f2 = f1.clone();
                            x1 = b - gr * (b - a);
                            f1 = re(x1).map(|p| (cost(&p), p));
                        } else {
                            a = x1;
                            x1 = x2;
                            f1 = f2.clone();
                            x2 = a + gr * (b - a);
                            f2 = re(x2).map(|p| (cost(&p), p));
                        }
                    }
                    _ => break,
                }
            }
            if let Some((c, p)) = f1 {
                if c < cost(&minimizer) {
                    minimizer = p;
                }
            }
            if let Some((c, p)) = f2 {
                if c < cost(&minimizer) {
                    minimizer = p;
                }
            }
        }
    }
    Ok(PhiInfinity {
        functional: Functional2D::new(minimizer.s, minimizer.u),
        norm: cost(&minimizer),
        tangent: minimizer.tangent,
        theta: minimizer.theta,
        inconclusive: at_end,
    })
}

#[derive(Clone, Debug)]
pub struct IntersectionEstimate {
    pub value: f64,
    pub count: usize,
    pub t: f64,
}

/// Dynamical intersection I_tau(taubar): the average of taubar/tau
/// period ratios over classes with tau-period <= t.
pub fn intersection(class_pairs: &[PairSample], t: f64) -> Result<IntersectionEstimate> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for p in class_pairs {
        if p.t1 > 1e-12 && p.t1 <= t {
            sum += p.t2 / p.t1;
            count += 1;
        }
    }
    if count == 0 {
        return Err(LabError::WindowTooSmall(format!("empty R_t at t = {t}")));
    }
    Ok(IntersectionEstimate {
        value: sum / count as f64,
        count,
        t,
    })
}

/// Hilbert entropy of a 3-dimensional representation: the critical
/// exponent of (tau_1 + tau_2)/2.
pub fn hilbert_entropy(
    pres: &Presentation,
    rep: &Representation,
    radius: usize,
    cap: usize,
    window: (f64, f64),
    t_cap: Option<f64>,
) -> Result<ExponentEstimate> {
    assert_eq!(rep.dim, 3, "hilbert entropy is a d=3 quantity");
    let pairs = gap_pair_spectra(pres, rep, radius, cap)?;
    let phi = Functional2D::new(0.5, 0.5);
    critical_exponent(&phi, &pairs, ExponentMethod::SlopeFit, window, t_cap)
}

/// One inequality of the chain with its slack.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ChainCheck {
    fn le(name: &str, lhs: f64, rhs: f64, tol: f64) -> ChainCheck {
        ChainCheck {
            name: name.to_string(),
            lhs,
            rhs,
            tolerance: tol,
            pass: lhs <= rhs + tol,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremBReport {
    pub beta: f64,
    pub gap_deviation: f64,
    pub h_tau: ExponentEstimate,
    pub h_taubar: ExponentEstimate,
    pub h_inf: ExponentEstimate,
    pub i_tau_taubar: IntersectionEstimate,
    pub i_taubar_tau: IntersectionEstimate,
    pub bracket_ok: bool,
    pub checks: Vec<ChainCheck>,
}

/// Assembles the inequality chain
/// beta h_inf <= min{h_inf, beta h_inf + 1 - beta} < min{h_taubar, h_tau/beta}
/// <= max{h_tau, h_taubar} for a non-gap-isospectral pair. Refuses
/// (hypothesis violation) on gap-isospectral input.
#[allow(clippy::too_many_arguments)]
pub fn theorem_b_report(
    pres: &Presentation,
    rep: &Representation,
    repbar: &Representation,
    beta: f64,
    ball_radius: usize,
    class_radius: usize,
    cap: usize,
    window: (f64, f64),
    t_cap: Option<f64>,
    iso_tol: f64,
) -> Result<TheoremBReport> {
    let gap = gap_isospectral_check(pres, rep, repbar, class_radius.min(6), cap)?;
    if gap.max_deviation < ISO_REFUSAL_FACTOR * iso_tol {
        return Err(LabError::HypothesisViolated(format!(
            "representations are gap-isospectral at tolerance {:.1e} (max deviation {:.3e})",
            iso_tol, gap.max_deviation
        )));
    }
    let pairs = ball_pair_spectra(pres, rep, repbar, ball_radius, cap)?;
    let class_pairs = class_pair_periods(pres, rep, repbar, class_radius, cap)?;
    let h_tau = critical_exponent(
        &Functional2D::new(1.0, 0.0),
        &pairs,
        ExponentMethod::SlopeFit,
        window,
        t_cap,
    )?;
    let h_taubar = critical_exponent(
        &Functional2D::new(0.0, 1.0),
        &pairs,
        ExponentMethod::SlopeFit,
        window,
        t_cap,
    )?;
    let h_inf = hinf(beta, &pairs, ExponentMethod::SlopeFit, window, t_cap)?;
    let t_big = class_pairs
        .iter()
        .map(|p| p.t1.max(p.t2))
        .fold(0.0f64, f64::max);
    let i_tau_taubar = intersection(&class_pairs, t_big)?;
    let swapped: Vec<PairSample> = class_pairs
        .iter()
        .map(|p| PairSample {
            len: p.len,
            t1: p.t2,
            t2: p.t1,
        })
        .collect();
    let i_taubar_tau = intersection(&swapped, t_big)?;
    let bracket_ok = i_tau_taubar.value > beta && beta > 1.0 / i_taubar_tau.value;

    let tol = |a: &ExponentEstimate, b: &ExponentEstimate| 2.0 * (a.residual + b.residual) + 0.05;
    let mid = h_inf.value.min(beta * h_inf.value + 1.0 - beta);
    let upper = h_taubar.value.min(h_tau.value / beta);
    let top = h_tau.value.max(h_taubar.value);
    let checks = vec![
        ChainCheck::le(
            "beta*h_inf <= min{h_inf, beta*h_inf + 1 - beta}",
            beta * h_inf.value,
            mid,
            1e-12,
        ),
        ChainCheck::le(
            "min{h_inf, beta*h_inf + 1 - beta} <= min{h_taubar, h_tau/beta}",
            mid,
            upper,
            tol(&h_inf, &h_tau),
        ),
        ChainCheck::le(
            "min{h_taubar, h_tau/beta} <= max{h_tau, h_taubar}",
            upper,
            top,
            tol(&h_tau, &h_taubar),
        ),
        ChainCheck::le(
            "I_tau(taubar) >= h_tau/h_taubar",
            h_tau.value / h_taubar.value,
            i_tau_taubar.value,
            tol(&h_tau, &h_taubar),
        ),
    ];
    Ok(TheoremBReport {
        beta,
        gap_deviation: gap.max_deviation,
        h_tau,
        h_taubar,
        h_inf,
        i_tau_taubar,
        i_taubar_tau,
        bracket_ok,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::group::DEFAULT_ELEMENT_CAP;

    /// Synthetic stream with known exponent h: complete levels l with
    /// e^{h l} cumulative elements, values spread across (l-1, l].
    fn synthetic_values(h: f64, count: usize) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        let mut cum = 1usize;
        let mut level = 1usize;
        while out.len() < count {
            let target = (h * level as f64).exp().round() as usize;
            let in_level = target.saturating_sub(cum).max(1);
            for j in 0..in_level {
                let v = level as f64 - 1.0 + (j as f64 + 0.5) / in_level as f64;
                out.push((level, v));
            }
            cum = target;
            level += 1;
        }
        out
    }

    #[test]
    fn slope_fit_recovers_synthetic_exponent() {
        let vals = synthetic_values(1.3, 40_000);
        let est = critical_exponent_of_values(
            &vals,
            ExponentMethod::SlopeFit,
            DEFAULT_WINDOW,
            None,
        )
        .unwrap();
        assert!(
            (est.value - 1.3).abs() < 0.04,
            "slope {} vs 1.3",
            est.value
        );
    }

    #[test]
    fn poincare_root_recovers_synthetic_exponent() {
        let vals = synthetic_values(0.8, 40_000);
        let est =
            critical_exponent_of_values(&vals, ExponentMethod::PoincareRoot, DEFAULT_WINDOW, None)
                .unwrap();
        assert!(
            (est.value - 0.8).abs() < 0.1,
            "root {} vs 0.8",
            est.value
        );
    }

    #[test]
    fn homogeneity_of_the_exponent() {
        let vals = synthetic_values(1.0, 30_000);
        let base = critical_exponent_of_values(
            &vals,
            ExponentMethod::SlopeFit,
            DEFAULT_WINDOW,
            None,
        )
        .unwrap();
        for s in [0.5, 2.0, 3.0] {
            let scaled: Vec<(usize, f64)> = vals.iter().map(|&(l, v)| (l, s * v)).collect();
            let est = critical_exponent_of_values(
                &scaled,
                ExponentMethod::SlopeFit,
                DEFAULT_WINDOW,
                None,
            )
            .unwrap();
            assert!(
                (est.value * s - base.value).abs() < 2.0 * (est.residual + base.residual) + 0.02,
                "s={s}: {} vs {}",
                est.value * s,
                base.value
            );
        }
    }

    #[test]
    fn positivity_violation_is_detected() {
        let mut vals = synthetic_values(1.0, 2000);
        for v in vals.iter_mut().take(100) {
            v.1 = -1.0;
        }
        match critical_exponent_of_values(&vals, ExponentMethod::SlopeFit, DEFAULT_WINDOW, None) {
            Err(LabError::PositivityViolation { violations }) => assert_eq!(violations, 100),
            other => panic!("expected positivity error, got {other:?}"),
        }
    }

    #[test]
    fn intersection_of_rep_with_itself_is_one() {
        let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
        let pairs = class_pair_periods(
            &entry.presentation,
            &entry.rep,
            &entry.rep,
            6,
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        let t = pairs.iter().map(|p| p.t1).fold(0.0f64, f64::max);
        let est = intersection(&pairs, t).unwrap();
        assert_eq!(est.value, 1.0);
        assert!(est.count > 3);
    }

    #[test]
    fn intersection_homogeneity_is_bookkeeping_exact() {
        let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
        let dual = entry.rep.dual();
        let pairs = class_pair_periods(
            &entry.presentation,
            &entry.rep,
            &dual,
            6,
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        let t = pairs.iter().map(|p| p.t1).fold(0.0f64, f64::max);
        let base = intersection(&pairs, t).unwrap();
        let s = 2.5f64;
        let scaled: Vec<PairSample> = pairs
            .iter()
            .map(|p| PairSample {
                len: p.len,
                t1: s * p.t1,
                t2: p.t2,
            })
            .collect();
        let est = intersection(&scaled, s * t).unwrap();
        assert!((est.value - base.value / s).abs() < 1e-12);
        assert_eq!(est.count, base.count);
    }

    #[test]
    fn hinf_at_beta_one_on_identical_pair_matches_h_tau() {
        let vals = synthetic_values(1.1, 20_000);
        let pairs: Vec<PairSample> = vals
            .iter()
            .map(|&(l, v)| PairSample {
                len: l,
                t1: v,
                t2: v,
            })
            .collect();
        let h = critical_exponent(
            &Functional2D::new(1.0, 0.0),
            &pairs,
            ExponentMethod::SlopeFit,
            DEFAULT_WINDOW,
            None,
        )
        .unwrap();
        let hi = hinf(1.0, &pairs, ExponentMethod::SlopeFit, DEFAULT_WINDOW, None).unwrap();
        assert!((h.value - hi.value).abs() < 1e-12);
    }

    #[test]
    fn phi_infinity_on_synthetic_hyperbola_arc() {
        // Q = arc of s u = 1/4 (strictly convex, asymptotic to the
        // axes): the L1 tangency at beta = 1 is the closed-form point
        // s = u = 1/2 with norm 1 and tangent direction (1, -1).
        let pts: Vec<QCurvePoint> = (0..=60)
            .map(|i| {
                let s = 0.08 * 1.06f64.powi(i);
                let u = 0.25 / s;
                QCurvePoint {
                    theta: u.atan2(s),
                    s,
                    u,
                    h_raw: 1.0,
                    residual: 0.0,
                    tangent: {
                        let n = (1.0 + (u / s) * (u / s)).sqrt();
                        (1.0 / n, -(u / s) / n)
                    },
                }
            })
            .collect();
        let res = phi_infinity(&pts, 1.0, None).unwrap();
        assert!(!res.inconclusive);
        assert!((res.functional.s - 0.5).abs() < 0.02, "s = {}", res.functional.s);
        assert!((res.functional.u - 0.5).abs() < 0.02);
        assert!((res.norm - 1.0).abs() < 0.005);
        // tangent parallel to (beta, -1) at the tangency point
        let t = res.tangent;
        let dot = (t.0 - t.1).abs() / 2f64.sqrt();
        assert!(dot > 0.999, "tangent {t:?}");
    }

    #[test]
    fn phi_infinity_ties_resolve_to_the_diagonal() {
        // degenerate gap-isospectral curve: Q is the line s + u = 1
        let pts: Vec<QCurvePoint> = (0..=20)
            .map(|i| {
                let s = 0.05 + 0.9 * i as f64 / 20.0;
                QCurvePoint {
                    theta: (1.0 - s).atan2(s),
                    s,
                    u: 1.0 - s,
                    h_raw: 1.0,
                    residual: 1e-3,
                    tangent: (std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2),
                }
            })
            .collect();
        let res = phi_infinity(&pts, 1.0, None).unwrap();
        assert!((res.functional.s - res.functional.u).abs() < 0.06);
        assert!((res.norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn phi_infinity_flags_endpoint_minimizers() {
        // strictly decreasing cost toward the arc end
        let pts: Vec<QCurvePoint> = (0..=10)
            .map(|i| {
                let theta = 0.5 + 0.05 * i as f64;
                QCurvePoint {
                    theta,
                    s: 2.0 - 0.1 * i as f64,
                    u: 0.1,
                    h_raw: 1.0,
                    residual: 0.0,
                    tangent: (1.0, 0.0),
                }
            })
            .collect();
        let res = phi_infinity(&pts, 1.0, None).unwrap();
        assert!(res.inconclusive);
    }

    #[test]
    fn gap_isospectral_pair_is_refused() {
        let entry = builtin("fuchsian-g2-sym2").unwrap();
        let dual = entry.rep.dual();
        let res = theorem_b_report(
            &entry.presentation,
            &entry.rep,
            &dual,
            1.0,
            5,
            3,
            DEFAULT_ELEMENT_CAP,
            DEFAULT_WINDOW,
            None,
            1e-6,
        );
        match res {
            Err(LabError::HypothesisViolated(_)) => {}
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }
}
