//! Critical exponents by both estimators: tau_1 entropy and Hilbert
//! entropy on the Fuchsian locus and on a deformation, with the
//! Schottky cross-validation case.
//!
//!     cargo run --release --example entropy

use anosov_lab::catalog::builtin;
use anosov_lab::exponents::{
    critical_exponent, gap_pair_spectra, ExponentMethod, Functional2D, DEFAULT_WINDOW,
};
use anosov_lab::group::DEFAULT_ELEMENT_CAP;

fn main() {
    for (name, radius) in [
        ("triangle-334-vinberg(0)", 12usize),
        ("triangle-334-vinberg(1.2)", 12),
        ("f2-schottky", 9),
    ] {
        let entry = builtin(name).unwrap();
        let pairs =
            gap_pair_spectra(&entry.presentation, &entry.rep, radius, DEFAULT_ELEMENT_CAP).unwrap();
        println!("== {name} at ball({radius}) ({} elements)", pairs.len());
        for (label, phi) in [
            ("h_tau1   ", Functional2D::new(1.0, 0.0)),
            ("h_hilbert", Functional2D::new(0.5, 0.5)),
        ] {
            let slope = critical_exponent(&phi, &pairs, ExponentMethod::SlopeFit, DEFAULT_WINDOW, None);
            let root =
                critical_exponent(&phi, &pairs, ExponentMethod::PoincareRoot, DEFAULT_WINDOW, None);
            match (slope, root) {
                (Ok(s), Ok(r)) => println!(
                    "  {label}: slope-fit {:.4} (stderr {:.4}) | poincare-root {:.4} | discrepancy {:.4}",
                    s.value,
                    s.residual,
                    r.value,
                    (s.value - r.value).abs()
                ),
                (s, r) => println!("  {label}: slope {s:?} root {r:?}"),
            }
        }
        println!();
    }
    println!("Fuchsian-locus reference: both entropies are 1 exactly in the limit.");
}
