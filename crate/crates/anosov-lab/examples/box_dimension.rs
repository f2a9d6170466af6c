//! Box-counting calibration on synthetic sets with known dimension, then
//! the limit-curve dimension of the Fuchsian octagon representation.
//!
//!     cargo run --release --example box_dimension

use anosov_lab::catalog::builtin;
use anosov_lab::hausdorff::{box_dim, eps_ladder, MetricPointCloud};
use anosov_lab::limitset::{flag_samples, FlagCurveParams};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn segment(n: usize) -> MetricPointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    MetricPointCloud::single(
        (0..n)
            .map(|_| {
                let t: f64 = rng.gen_range(-0.8..0.8);
                let norm = (1.0 + t * t).sqrt();
                vec![1.0 / norm, t / norm, 0.0]
            })
            .collect(),
        3,
    )
}

fn cantor(n: usize) -> MetricPointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    MetricPointCloud::single(
        (0..n)
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
        3,
    )
}

fn main() {
    let eps = eps_ladder(0.3, 0.003, 10);
    let seg = box_dim(&segment(10_000), &eps, 3, 1).unwrap();
    println!("segment:     dim = {:.4} (exact 1)", seg.slope);
    let can = box_dim(&cantor(10_000), &eps, 3, 1).unwrap();
    println!(
        "cantor:      dim = {:.4} (exact log2/log3 = {:.4})",
        can.slope,
        2f64.ln() / 3f64.ln()
    );

    let entry = builtin("fuchsian-g2-sym2").unwrap();
    let dual = entry.rep.dual();
    let params = FlagCurveParams {
        count: 10_000,
        depth: 16,
        seed: 4,
        ..Default::default()
    };
    let samples =
        flag_samples(&entry.presentation, &entry.rep, &dual, &entry.ordering, &params).unwrap();
    let xi_cloud = MetricPointCloud::single(
        samples.iter().map(|s| s.xi.0.iter().cloned().collect()).collect(),
        3,
    );
    let rep = box_dim(&xi_cloud, &eps_ladder(0.3, 0.01, 8), 3, 1).unwrap();
    println!(
        "octagon limit curve: dim = {:.4} (conic: exact 1), local slopes {:?}",
        rep.slope,
        rep.local_slopes
            .iter()
            .map(|s| (s * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );

    // full flag curve in the product metric vs factor dimensions
    let flag_cloud = MetricPointCloud::product(
        samples
            .iter()
            .map(|s| {
                let mut c: Vec<f64> = s.xi.0.iter().cloned().collect();
                c.extend(s.xibar.0.iter());
                c
            })
            .collect(),
        3,
        3,
    );
    let prod = box_dim(&flag_cloud, &eps_ladder(0.3, 0.01, 8), 3, 1).unwrap();
    println!("flag curve (product metric): dim = {:.4} (max of factors)", prod.slope);
}
