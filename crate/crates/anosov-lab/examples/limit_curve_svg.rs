//! Samples the limit curve and its dual along seeded geodesic rays and
//! renders both to SVG (affine chart with the best margin).
//!
//!     cargo run --release --example limit_curve_svg

use anosov_lab::catalog::builtin;
use anosov_lab::hausdorff::MetricPointCloud;
use anosov_lab::limitset::{flag_samples, FlagCurveParams};
use anosov_lab::svg::{padded_range, SvgPlot};

fn main() {
    for name in ["fuchsian-g2-sym2", "triangle-334-vinberg(1.2)"] {
        let entry = builtin(name).unwrap();
        let dual = entry.rep.dual();
        let params = FlagCurveParams {
            count: 3000,
            depth: 22,
            seed: 7,
            ..Default::default()
        };
        let samples =
            flag_samples(&entry.presentation, &entry.rep, &dual, &entry.ordering, &params).unwrap();
        let converged = samples.iter().filter(|s| s.converged).count();
        println!(
            "{name}: {} samples ({} converged), order keys span [{:.3}, {:.3}]",
            samples.len(),
            converged,
            samples.first().unwrap().order_key,
            samples.last().unwrap().order_key
        );
        let cloud = MetricPointCloud::single(
            samples.iter().map(|s| s.xi.0.iter().cloned().collect()).collect(),
            entry.rep.dim,
        );
        let coords = cloud.chart_coordinates();
        let xr = padded_range(coords.iter().map(|c| c[0]));
        let yr = padded_range(coords.iter().map(|c| c[1]));
        let mut plot = SvgPlot::new(640.0, 640.0, xr, yr);
        for c in &coords {
            plot.dot(c[0], c[1], 1.0, "black");
        }
        let path = format!("out/limit-curve-{}.svg", name.replace(['(', ')', '.'], "_"));
        std::fs::create_dir_all("out").unwrap();
        std::fs::write(&path, plot.finish(&format!("limit curve of {name}"))).unwrap();
        println!("  wrote {path}");
    }
}
