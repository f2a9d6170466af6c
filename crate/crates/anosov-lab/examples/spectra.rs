//! Cartan and Jordan projections along words and rays: per-element
//! spectra, the subadditivity of a_1, and the exterior-power route that
//! keeps deep words accurate.
//!
//!     cargo run --release --example spectra

use anosov_lab::catalog::builtin;
use anosov_lab::group::{ball, geodesic_rays, DEFAULT_ELEMENT_CAP};
use anosov_lab::replin::Evaluator;

fn main() {
    let entry = builtin("triangle-334-vinberg(1.2)").unwrap();
    let pres = &entry.presentation;
    let mut ev = Evaluator::new(&entry.rep);

    println!("sample spectra of {}:", entry.name);
    for text in ["r1", "r1 r2", "r1 r2 r3", "r1 r2 r1 r3", "r1 r2 r3 r1 r2 r3"] {
        let w = pres.parse_word(text).unwrap();
        let s = ev.spectrum(&w).unwrap();
        println!(
            "  {:22} a = [{:+.3} {:+.3} {:+.3}]  lambda = [{:+.3} {:+.3} {:+.3}]  tau1(a) = {:.3}",
            text, s.cartan[0], s.cartan[1], s.cartan[2], s.jordan[0], s.jordan[1], s.jordan[2],
            s.tau_a(1)
        );
    }

    // subadditivity a1(gh) <= a1(g) + a1(h)
    let b = ball(pres, 5, DEFAULT_ELEMENT_CAP).unwrap();
    let mut worst: f64 = f64::NEG_INFINITY;
    for (i, u) in b.iter().enumerate().step_by(7) {
        let v = &b[(i * 31 + 11) % b.len()];
        let su = ev.spectrum(u).unwrap().cartan[0];
        let sv = ev.spectrum(v).unwrap().cartan[0];
        let suv = ev.spectrum(&u.concat(v)).unwrap().cartan[0];
        worst = worst.max(suv - su - sv);
    }
    println!("\nsubadditivity defect max a1(uv) - a1(u) - a1(v) = {worst:.2e} (should be <= ~1e-8)");

    // deep-ray spectra stay clean in f64 thanks to compound products
    let ray = &geodesic_rays(pres, 60, 1, 5)[0];
    println!("\ntau_1 along a depth-60 ray:");
    for n in [10usize, 20, 30, 40, 50, 60] {
        let s = ev.spectrum(&ray.prefix(n)).unwrap();
        println!("  n = {n:2}: tau1(a) = {:8.3}   tau2(a) = {:8.3}", s.tau_a(1), s.tau_a(2));
    }
}
