//! Minimal standalone SVG rendering of rate-region overlays: axes, one
//! polyline per region, a small legend. No plotting dependency.

use crate::gaussian::RateRegion;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

struct Frame {
    max_x: f64,
    max_y: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (WIDTH - 2.0 * MARGIN) * x / self.max_x
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * y / self.max_y
    }
}

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Render regions as closed polylines over shared axes.
pub fn render_regions(regions: &[&RateRegion], title: &str) -> String {
    let max_x = regions.iter().map(|r| r.max_r1()).fold(1e-9, f64::max) * 1.05;
    let max_y = regions.iter().map(|r| r.max_r2()).fold(1e-9, f64::max) * 1.05;
    let f = Frame { max_x, max_y };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"15\">{title}</text>\n",
        WIDTH / 2.0
    ));
    // axes
    let (x0, y0) = (f.px(0.0), f.py(0.0));
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"black\"/>\n",
        f.px(max_x)
    ));
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{}\" stroke=\"black\"/>\n",
        f.py(max_y)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\">R1 (bits/use)</text>\n",
        WIDTH / 2.0,
        HEIGHT - 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\" transform=\"rotate(-90 18 {})\">R2 (bits/use)</text>\n",
        HEIGHT / 2.0,
        HEIGHT / 2.0
    ));
    // simple ticks at the data maxima
    for (value, max, horizontal) in [(max_x / 1.05, max_x, true), (max_y / 1.05, max_y, false)] {
        let _ = max;
        let label = format!("{value:.3}");
        if horizontal {
            let x = f.px(value);
            svg.push_str(&format!(
                "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n",
                y0 + 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
                 font-size=\"10\">{label}</text>\n",
                y0 + 18.0
            ));
        } else {
            let y = f.py(value);
            svg.push_str(&format!(
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{x0}\" y2=\"{y}\" stroke=\"black\"/>\n",
                x0 - 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" \
                 font-size=\"10\">{label}</text>\n",
                x0 - 8.0,
                y + 4.0
            ));
        }
    }
    // region polylines and legend
    for (i, region) in regions.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = region
            .boundary
            .iter()
            .chain(region.boundary.first())
            .map(|&(x, y)| format!("{:.3},{:.3}", f.px(x), f.py(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            points.join(" ")
        ));
        let ly = 40.0 + 18.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            WIDTH - 200.0,
            WIDTH - 170.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            WIDTH - 162.0,
            ly + 4.0,
            region.label
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_a_wellformed_document() {
        let region = RateRegion {
            boundary: vec![(0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.0, 1.0)],
            label: "demo".into(),
            grid: None,
        };
        let svg = render_regions(&[&region], "overlay");
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("demo"));
    }
}
