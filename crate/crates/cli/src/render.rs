//! Standalone SVG rendering of planar instances (m = n = 2).
//!
//! One glyph group per anchor (a cross at the anchor point plus one filled
//! circle per value atom, all in the anchor's color) and, when present, one
//! highlighted group for the extension candidate. The viewBox is fitted to
//! the data with a 10% margin.

use qlip_core::{AnchoredMap, Point, QConfig};

const COLORS: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];
const CANDIDATE_COLOR: &str = "#000000";

pub fn renderable(map: &AnchoredMap) -> bool {
    map.domain_dim() == 2 && map.ambient_dim() == 2
}

/// Renders the instance; y grows upward (coordinates are flipped into SVG
/// screen space). Requires [`renderable`].
pub fn render_svg(map: &AnchoredMap, point: Option<&Point>, candidate: Option<&QConfig>) -> String {
    assert!(renderable(map));

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut push = |c: &[f64]| {
        xs.push(c[0]);
        ys.push(c[1]);
    };
    for anchor in map.anchors() {
        push(anchor.point.coords());
        for atom in anchor.value.atoms() {
            push(atom.coords());
        }
    }
    if let Some(p) = point {
        push(p.coords());
    }
    if let Some(t) = candidate {
        for atom in t.atoms() {
            push(atom.coords());
        }
    }

    let min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1, y0, y1) = (min(&xs), max(&xs), min(&ys), max(&ys));
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.1 * extent;
    // flip y: world (x, y) -> svg (x, -y)
    let view = format!(
        "{} {} {} {}",
        fmt(x0 - margin),
        fmt(-(y1 + margin)),
        fmt(x1 - x0 + 2.0 * margin),
        fmt(y1 - y0 + 2.0 * margin)
    );
    let atom_r = 0.015 * extent;
    let cross = 0.03 * extent;
    let stroke = 0.006 * extent;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{view}\">\n"
    ));
    for (i, anchor) in map.anchors().iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        svg.push_str(&format!("  <g id=\"anchor-{i}\" fill=\"{color}\" stroke=\"none\">\n"));
        let (ax, ay) = world(anchor.point.coords());
        svg.push_str(&cross_glyph(ax, ay, cross, stroke, color));
        for atom in anchor.value.atoms() {
            let (cx, cy) = world(atom.coords());
            svg.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt(cx),
                fmt(cy),
                fmt(atom_r)
            ));
        }
        svg.push_str("  </g>\n");
    }
    if let Some(t) = candidate {
        svg.push_str(&format!(
            "  <g id=\"candidate\" fill=\"none\" stroke=\"{CANDIDATE_COLOR}\" stroke-width=\"{}\">\n",
            fmt(stroke)
        ));
        if let Some(p) = point {
            let (px, py) = world(p.coords());
            svg.push_str(&cross_glyph(px, py, cross, stroke, CANDIDATE_COLOR));
        }
        for atom in t.atoms() {
            let (cx, cy) = world(atom.coords());
            svg.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt(cx),
                fmt(cy),
                fmt(1.6 * atom_r)
            ));
        }
        svg.push_str("  </g>\n");
    }
    svg.push_str("</svg>\n");
    svg
}

fn world(c: &[f64]) -> (f64, f64) {
    (c[0], -c[1])
}

fn cross_glyph(x: f64, y: f64, half: f64, stroke: f64, color: &str) -> String {
    format!(
        "    <path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"{}\" stroke-width=\"{}\" fill=\"none\"/>\n",
        fmt(x - half),
        fmt(y),
        fmt(x + half),
        fmt(y),
        fmt(x),
        fmt(y - half),
        fmt(x),
        fmt(y + half),
        color,
        fmt(stroke)
    )
}

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}
