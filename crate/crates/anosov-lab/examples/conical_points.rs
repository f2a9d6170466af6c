//! beta-conical point detection along geodesic rays: gap histories,
//! hit depths and verdict fractions for the deformation pair against
//! its dual.
//!
//!     cargo run --release --example conical_points

use anosov_lab::catalog::builtin;
use anosov_lab::hausdorff::{conical_points, generator_step_bound, ray_pair_spectra};
use anosov_lab::limitset::{flag_samples, FlagCurveParams};

fn main() {
    let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
    let dual = entry.rep.dual();
    let params = FlagCurveParams {
        count: 2000,
        depth: 30,
        seed: 3,
        ..Default::default()
    };
    let samples =
        flag_samples(&entry.presentation, &entry.rep, &dual, &entry.ordering, &params).unwrap();
    let rays = ray_pair_spectra(&samples, &entry.rep, &dual).unwrap();
    let r = 2.0 * generator_step_bound(&entry.rep).max(generator_step_bound(&dual));
    println!(
        "{} rays at depth 30; R = {:.3} (2x coarse-stability step bound)",
        rays.len(),
        r
    );

    println!("\ngap history |tau(a) - taubar(a)| of the first ray:");
    let ray = &rays[0];
    for k in (5..=30).step_by(5) {
        println!(
            "  depth {k:2}: tau = {:7.3}  taubar = {:7.3}  gap = {:6.3}",
            ray.t1[k - 1],
            ray.t2[k - 1],
            (ray.t1[k - 1] - ray.t2[k - 1]).abs()
        );
    }

    for beta in [1.0, 0.8] {
        let verdicts = conical_points(&rays, beta, r, 10..=30, 3);
        let flagged = verdicts.iter().filter(|v| v.verdict).count();
        println!(
            "\nbeta = {beta}: {}/{} rays conical ({:.1}%)",
            flagged,
            verdicts.len(),
            100.0 * flagged as f64 / verdicts.len() as f64
        );
    }

    // identity pairing: every depth is a hit
    let self_rays = ray_pair_spectra(&samples, &entry.rep, &entry.rep).unwrap();
    let verdicts = conical_points(&self_rays, 1.0, 0.5, 10..=30, 3);
    let all = verdicts.iter().all(|v| v.verdict);
    println!("\nrho vs rho at beta = 1: every ray conical: {all}");
}
