//! Finite-depth Anosov verification for the catalog representations:
//! domination fits, gap-isospectrality against the dual, sampled
//! hyperconvexity and the limit cone.
//!
//!     cargo run --release --example verify_anosov

use anosov_lab::anosov::{
    domination_fit, gap_isospectral_check, hyperconvexity_check, limit_cone, TripleFrame,
    DEFAULT_DET_FLOOR, DEFAULT_MU_MIN,
};
use anosov_lab::catalog::builtin;
use anosov_lab::group::{ball, conjugacy_reps, DEFAULT_ELEMENT_CAP};
use anosov_lab::limitset::{flag_samples, FlagCurveParams};
use anosov_lab::replin::Evaluator;

fn main() {
    for name in [
        "fuchsian-g2-sym2",
        "triangle-334-vinberg(0)",
        "triangle-334-vinberg(1.2)",
        "f2-schottky",
    ] {
        let entry = builtin(name).unwrap();
        let radius = if name.starts_with("fuchsian") { 5 } else { 8 };
        let b = ball(&entry.presentation, radius, DEFAULT_ELEMENT_CAP).unwrap();
        let mut ev = Evaluator::new(&entry.rep);
        let spectra: Vec<_> = b.iter().map(|w| ev.spectrum(w).unwrap()).collect();
        println!("== {name} (ball({radius}) = {} elements)", b.len());
        for k in 1..entry.rep.dim {
            let fit = domination_fit(&spectra, k, DEFAULT_MU_MIN).unwrap();
            println!(
                "  tau_{k} domination: mu = {:.3}, C = {:.3} -> {}",
                fit.mu,
                fit.intercept,
                if fit.verdict { "dominated" } else { "NOT dominated" }
            );
        }

        let dual = entry.rep.dual();
        let gap = gap_isospectral_check(&entry.presentation, &entry.rep, &dual, 5, DEFAULT_ELEMENT_CAP)
            .unwrap();
        println!(
            "  gap-isospectrality vs dual: max deviation {:.3e} over {} classes",
            gap.max_deviation, gap.classes
        );

        let params = FlagCurveParams {
            count: 400,
            depth: 18,
            seed: 11,
            ..Default::default()
        };
        let samples =
            flag_samples(&entry.presentation, &entry.rep, &dual, &entry.ordering, &params).unwrap();
        let frames: Vec<TripleFrame> = samples
            .iter()
            .filter(|s| s.converged)
            .map(|s| TripleFrame {
                xi: s.xi.0.clone(),
                frame_top: nalgebra::DMatrix::from_column_slice(entry.rep.dim, 1, s.xi.0.as_slice()),
                order_key: s.order_key,
            })
            .collect();
        match hyperconvexity_check(&frames, 2, DEFAULT_DET_FLOOR, 5000, 1) {
            Ok(hc) => println!(
                "  hyperconvexity (1,1,2): min det {:.3e} over {} triples -> {} [{}]",
                hc.min_det,
                hc.triples,
                if hc.verdict { "pass" } else { "fail" },
                hc.caveat
            ),
            Err(e) => println!("  hyperconvexity: {e}"),
        }

        let reps = conjugacy_reps(&entry.presentation, 6, DEFAULT_ELEMENT_CAP, false).unwrap();
        let class_spectra: Vec<_> = reps.iter().map(|w| ev.spectrum(w).unwrap()).collect();
        let cone = limit_cone(&class_spectra);
        println!(
            "  limit cone: {} periods, gap-plane hull area {:.4e}\n",
            cone.points.len(),
            cone.hull_area
        );
    }
}
