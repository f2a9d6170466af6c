//! The critical hypersurface Q = {phi : h_phi = 1} in span{tau_1, tau_2}
//! and the dual-norm-minimizing functional phi_infinity.
//!
//!     cargo run --release --example qcurve_phi_infinity

use anosov_lab::catalog::builtin;
use anosov_lab::exponents::{
    critical_exponent, gap_pair_spectra, phi_infinity, qcurve_is_convex, ExponentMethod,
    Functional2D, QCurvePoint, DEFAULT_WINDOW,
};
use anosov_lab::group::DEFAULT_ELEMENT_CAP;

fn curve(pairs: &[anosov_lab::exponents::PairSample], n: usize) -> Vec<QCurvePoint> {
    let mut pts = Vec::new();
    for i in 1..=n {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / (n + 1) as f64;
        let phi = Functional2D::new(theta.cos(), theta.sin());
        if let Ok(est) =
            critical_exponent(&phi, pairs, ExponentMethod::PoincareRoot, DEFAULT_WINDOW, None)
        {
            pts.push(QCurvePoint {
                theta,
                s: est.value * theta.cos(),
                u: est.value * theta.sin(),
                h_raw: est.value,
                residual: est.residual.max(0.01),
                tangent: (0.0, 0.0),
            });
        }
    }
    let m = pts.len();
    for i in 1..m.saturating_sub(1) {
        let dx = pts[i + 1].s - pts[i - 1].s;
        let dy = pts[i + 1].u - pts[i - 1].u;
        let norm = (dx * dx + dy * dy).sqrt();
        pts[i].tangent = (dx / norm, dy / norm);
    }
    pts
}

fn main() {
    for name in ["triangle-334-vinberg(0)", "triangle-334-vinberg(1.2)"] {
        let entry = builtin(name).unwrap();
        let pairs =
            gap_pair_spectra(&entry.presentation, &entry.rep, 13, DEFAULT_ELEMENT_CAP).unwrap();
        let pts = curve(&pairs, 24);
        println!("== {name}: {} Q-points, convex: {}", pts.len(), qcurve_is_convex(&pts, 1e-3));
        for p in pts.iter().step_by(6) {
            println!(
                "   theta {:.3}: (s, u) = ({:.3}, {:.3}), h_raw = {:.4}",
                p.theta, p.s, p.u, p.h_raw
            );
        }
        // symmetry under the opposition involution (coordinate swap)
        let mid = pts.len() / 2;
        let sym_defect = (pts[mid].s - pts[mid].u).abs().min(
            pts.iter()
                .map(|p| {
                    let mirror = pts
                        .iter()
                        .map(|q| ((q.s - p.u).powi(2) + (q.u - p.s).powi(2)).sqrt())
                        .fold(f64::INFINITY, f64::min);
                    mirror
                })
                .fold(0.0f64, f64::max),
        );
        println!("   swap-symmetry defect: {sym_defect:.4}");
        match phi_infinity(&pts, 1.0, None) {
            Ok(res) => println!(
                "   phi_infinity(beta=1): (s, u) = ({:.4}, {:.4}), norm {:.4}{}",
                res.functional.s,
                res.functional.u,
                res.norm,
                if res.inconclusive { " [endpoint: inconclusive]" } else { "" }
            ),
            Err(e) => println!("   phi_infinity: {e}"),
        }
        println!();
    }
}
