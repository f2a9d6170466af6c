//! Minimal SVG emission for curve and log-log plots. No timestamps or
//! other run-dependent metadata: identical inputs give identical bytes.

use std::fmt::Write as _;

pub struct SvgPlot {
    width: f64,
    height: f64,
    margin: f64,
    xrange: (f64, f64),
    yrange: (f64, f64),
    body: String,
}

impl SvgPlot {
    pub fn new(width: f64, height: f64, xrange: (f64, f64), yrange: (f64, f64)) -> SvgPlot {
        SvgPlot {
            width,
            height,
            margin: 40.0,
            xrange,
            yrange,
            body: String::new(),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1) = self.xrange;
        let (y0, y1) = self.yrange;
        let px = self.margin + (x - x0) / (x1 - x0) * (self.width - 2.0 * self.margin);
        let py = self.height - self.margin - (y - y0) / (y1 - y0) * (self.height - 2.0 * self.margin);
        (px, py)
    }

    pub fn dot(&mut self, x: f64, y: f64, r: f64, color: &str) {
        let (px, py) = self.map(x, y);
        writeln!(
            self.body,
            r#"<circle cx="{px:.2}" cy="{py:.2}" r="{r}" fill="{color}"/>"#
        )
        .unwrap();
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], color: &str, width: f64) {
        if pts.is_empty() {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (px, py) = self.map(x, y);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
            coords.join(" ")
        )
        .unwrap();
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
        self.polyline(&[a, b], color, width);
    }

    pub fn text(&mut self, x: f64, y: f64, s: &str) {
        let (px, py) = self.map(x, y);
        writeln!(
            self.body,
            r#"<text x="{px:.2}" y="{py:.2}" font-size="11" font-family="monospace">{s}</text>"#
        )
        .unwrap();
    }

    pub fn finish(self, title: &str) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
                "\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
                "<text x=\"{m}\" y=\"20\" font-size=\"13\" font-family=\"monospace\">{t}</text>\n",
                "{body}</svg>\n"
            ),
            w = self.width,
            h = self.height,
            m = self.margin,
            t = title,
            body = self.body
        )
    }
}

/// Plot ranges with a small border around the data.
pub fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let pad = 0.05 * (hi - lo).max(1e-9);
    (lo - pad, hi + pad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_output() {
        let mut p1 = SvgPlot::new(200.0, 150.0, (0.0, 1.0), (0.0, 1.0));
        p1.dot(0.5, 0.5, 2.0, "black");
        p1.polyline(&[(0.0, 0.0), (1.0, 1.0)], "blue", 1.0);
        let s1 = p1.finish("t");
        let mut p2 = SvgPlot::new(200.0, 150.0, (0.0, 1.0), (0.0, 1.0));
        p2.dot(0.5, 0.5, 2.0, "black");
        p2.polyline(&[(0.0, 0.0), (1.0, 1.0)], "blue", 1.0);
        assert_eq!(s1, p2.finish("t"));
        assert!(s1.starts_with("<svg"));
    }
}
