//! Sphere and ball enumeration across the three presentation families,
//! with the free-group count formula and the BFS oracle as checks.
//!
//!     cargo run --release --example ball_census

use anosov_lab::group::{oracle, parse_presentation, spheres, DEFAULT_ELEMENT_CAP};

fn main() {
    for (text, radius) in [
        ("free rank=2", 10usize),
        ("surface genus=2", 6),
        ("triangle 3 3 4", 14),
    ] {
        let pres = parse_presentation(text).unwrap();
        let s = spheres(&pres, radius, DEFAULT_ELEMENT_CAP).unwrap();
        println!("{text}:");
        let sizes: Vec<usize> = (0..=radius).map(|n| s.sphere(n).len()).collect();
        println!("  sphere sizes 0..={radius}: {sizes:?}");
        println!("  ball({radius}) = {}", s.ball_size());
        if text.starts_with("free") {
            let ok = (1..=radius).all(|n| sizes[n] == 4 * 3usize.pow(n as u32 - 1));
            println!("  4*3^(n-1) formula: {}", if ok { "exact" } else { "BROKEN" });
        } else {
            let check = radius.min(4);
            let bfs = oracle::bfs_ball_sizes(&pres, check);
            let ok = (0..=check).all(|n| bfs[n] == sizes[n]);
            println!(
                "  BFS oracle to radius {check}: {}",
                if ok { "exact match" } else { "MISMATCH" }
            );
        }
        // growth-rate estimate from the last two spheres
        let rate = sizes[radius] as f64 / sizes[radius - 1] as f64;
        println!("  growth per step ~ {rate:.3}\n");
    }
}
