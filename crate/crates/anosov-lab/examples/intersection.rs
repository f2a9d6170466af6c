//! Dynamical intersection estimates from conjugacy-class periods:
//! I(rho, rho) = 1 exactly, homogeneity, and the lower bound through
//! the entropy ratio on the deformation pair.
//!
//!     cargo run --release --example intersection

use anosov_lab::catalog::builtin;
use anosov_lab::exponents::{
    ball_pair_spectra, class_pair_periods, critical_exponent, intersection, ExponentMethod,
    Functional2D, PairSample, DEFAULT_WINDOW,
};
use anosov_lab::group::DEFAULT_ELEMENT_CAP;

fn main() {
    let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
    let dual = entry.rep.dual();

    let self_pairs = class_pair_periods(
        &entry.presentation,
        &entry.rep,
        &entry.rep,
        8,
        DEFAULT_ELEMENT_CAP,
    )
    .unwrap();
    let t_max = self_pairs.iter().map(|p| p.t1).fold(0.0f64, f64::max);
    let i_self = intersection(&self_pairs, t_max).unwrap();
    println!("I(rho, rho) = {} over {} classes (exact 1)", i_self.value, i_self.count);

    let pairs = class_pair_periods(
        &entry.presentation,
        &entry.rep,
        &dual,
        8,
        DEFAULT_ELEMENT_CAP,
    )
    .unwrap();
    let t_max = pairs.iter().map(|p| p.t1).fold(0.0f64, f64::max);
    for i in 1..=4 {
        let t = t_max * i as f64 / 4.0;
        if let Ok(est) = intersection(&pairs, t) {
            println!("I_tau(taubar) at t = {t:.2}: {:.4} ({} classes)", est.value, est.count);
        }
    }

    // homogeneity: I(s tau, taubar) = I(tau, taubar)/s as bookkeeping
    let s = 2.0;
    let scaled: Vec<PairSample> = pairs
        .iter()
        .map(|p| PairSample { len: p.len, t1: s * p.t1, t2: p.t2 })
        .collect();
    let base = intersection(&pairs, t_max).unwrap();
    let half = intersection(&scaled, s * t_max).unwrap();
    println!(
        "homogeneity: I(2 tau)(taubar) = {:.6} vs I/2 = {:.6} (defect {:.1e})",
        half.value,
        base.value / s,
        (half.value - base.value / s).abs()
    );

    // lower bound I_tau(taubar) >= h_tau / h_taubar
    let ball_pairs = ball_pair_spectra(
        &entry.presentation,
        &entry.rep,
        &dual,
        12,
        DEFAULT_ELEMENT_CAP,
    )
    .unwrap();
    let h_tau = critical_exponent(
        &Functional2D::new(1.0, 0.0),
        &ball_pairs,
        ExponentMethod::PoincareRoot,
        DEFAULT_WINDOW,
        None,
    )
    .unwrap();
    let h_taubar = critical_exponent(
        &Functional2D::new(0.0, 1.0),
        &ball_pairs,
        ExponentMethod::PoincareRoot,
        DEFAULT_WINDOW,
        None,
    )
    .unwrap();
    println!(
        "lower bound: I_tau(taubar) = {:.4} >= h_tau/h_taubar = {:.4}/{:.4} = {:.4}",
        base.value,
        h_tau.value,
        h_taubar.value,
        h_tau.value / h_taubar.value
    );
}
