//! Minimal SVG 1.1 output: polylines, circles and axis ticks.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

/// Affine map from data coordinates to the plot area (y pointing up).
#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn polyline(out: &mut String, pts: impl Iterator<Item = (f64, f64)>, stroke: &str, width: f64) {
    let mut coords = String::new();
    for (x, y) in pts {
        let _ = write!(coords, "{x:.2},{y:.2} ");
    }
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="{stroke}" stroke-width="{width}" points="{}"/>"#,
        coords.trim_end()
    );
}

/// Axis box with tick labels at the given data positions.
fn axes(
    out: &mut String,
    f: &Frame,
    xticks: &[(f64, String)],
    yticks: &[(f64, String)],
    xlabel: &str,
    ylabel: &str,
) {
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let base = HEIGHT - MARGIN;
    for (x, label) in xticks {
        let px = f.px(*x);
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{base}" x2="{px:.2}" y2="{:.1}" stroke="black"/>"#,
            base + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            base + 18.0,
            escape(label)
        );
    }
    for (y, label) in yticks {
        let py = f.py(*y);
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{py:.2}" x2="{MARGIN}" y2="{py:.2}" stroke="black"/>"#,
            MARGIN - 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            MARGIN - 8.0,
            py + 4.0,
            escape(label)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(ylabel)
    );
}

/// The curve `γ_mn` over `[-1, 1]²` with the nodes as markers.
pub fn nodes_figure(title: &str, curve: &[(f64, f64)], nodes: &[(f64, f64)]) -> String {
    let f = Frame {
        x0: -1.05,
        x1: 1.05,
        y0: -1.05,
        y1: 1.05,
    };
    let mut out = String::new();
    header(&mut out, title);
    let ticks: Vec<(f64, String)> = [-1.0, -0.5, 0.0, 0.5, 1.0]
        .iter()
        .map(|&t| (t, format!("{t}")))
        .collect();
    axes(&mut out, &f, &ticks, &ticks, "u", "v");
    polyline(
        &mut out,
        curve.iter().map(|&(u, v)| (f.px(u), f.py(v))),
        "#4477aa",
        0.8,
    );
    for &(u, v) in nodes {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#cc3311"/>"##,
            f.px(u),
            f.py(v)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// A line plot with a logarithmic x axis. Points with `x <= 0` or non-finite
/// coordinates are skipped.
pub fn log_x_plot(title: &str, xlabel: &str, ylabel: &str, points: &[(f64, f64)]) -> String {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.log10(), y))
        .collect();
    let mut out = String::new();
    header(&mut out, title);
    if pts.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let (mut lx0, mut lx1) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.0), b.max(p.0))
        });
    let (mut y0, mut y1) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.1), b.max(p.1))
        });
    if lx1 - lx0 < 1e-12 {
        lx0 -= 0.5;
        lx1 += 0.5;
    }
    if y1 - y0 < 1e-12 {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let pad = 0.08 * (y1 - y0);
    let f = Frame {
        x0: lx0 - 0.05 * (lx1 - lx0),
        x1: lx1 + 0.05 * (lx1 - lx0),
        y0: y0 - pad,
        y1: y1 + pad,
    };

    let mut xticks = Vec::new();
    for d in (lx0.floor() as i32)..=(lx1.ceil() as i32) {
        for mant in [1.0, 2.0, 5.0] {
            let t = (mant * 10f64.powi(d)).log10();
            if t >= f.x0 && t <= f.x1 {
                xticks.push((t, format!("{}", mant * 10f64.powi(d))));
            }
        }
    }
    let yticks: Vec<(f64, String)> = (0..=4)
        .map(|i| {
            let y = f.y0 + (f.y1 - f.y0) * i as f64 / 4.0;
            (y, format!("{y:.3}"))
        })
        .collect();
    axes(&mut out, &f, &xticks, &yticks, xlabel, ylabel);
    polyline(
        &mut out,
        pts.iter().map(|&(x, y)| (f.px(x), f.py(y))),
        "#228833",
        1.5,
    );
    for &(x, y) in &pts {
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#228833"/>"##,
            f.px(x),
            f.py(y)
        );
    }
    out.push_str("</svg>\n");
    out
}
