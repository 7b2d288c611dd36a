use std::fmt::Write as _;

use super::DiskLayout;
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Pixels per model unit.
    pub scale: f64,
    /// Blank border around the drawing, in model units.
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { scale: 20.0, margin: 0.5 }
    }
}

/// Renders the unit disks and the straight-line drawing through their centers.
/// Grid layouts can be drawn via [`super::GridLayout::to_disk_layout`].
pub fn export_svg(g: &Graph, layout: &DiskLayout, opts: &SvgOptions) -> Result<String> {
    let pts = layout.total_points(g.n())?;
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(first) = pts.first() {
        (x0, x1, y0, y1) = (first.x, first.x, first.y, first.y);
    }
    for p in &pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let pad = if pts.is_empty() { opts.margin } else { 1.0 + opts.margin };
    let s = opts.scale;
    let width = (x1 - x0 + 2.0 * pad) * s;
    let height = (y1 - y0 + 2.0 * pad) * s;
    // model y grows upward, SVG y grows downward
    let sx = |x: f64| (x - x0 + pad) * s;
    let sy = |y: f64| (y1 - y + pad) * s;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(out, r##"<g fill="#9ecae1" fill-opacity="0.35" stroke="#3182bd" stroke-width="1">"##);
    for p in &pts {
        let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#, sx(p.x), sy(p.y), s);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g stroke="#222222" stroke-width="1.5">"##);
    for (u, v) in g.edges() {
        let (a, b) = (pts[u], pts[v]);
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            sx(a.x),
            sy(a.y),
            sx(b.x),
            sy(b.y)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::Point2;
    use super::*;

    #[test]
    fn two_circles_one_line() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        let l = DiskLayout::from_points(vec![Point2::new(0.0, 0.0), Point2::new(2.0, 0.0)]);
        let svg = export_svg(&g, &l, &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg, export_svg(&g, &l, &SvgOptions::default()).unwrap());
    }

    #[test]
    fn empty_graph() {
        let svg = export_svg(&Graph::new(0), &DiskLayout::default(), &SvgOptions::default()).unwrap();
        assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<circle") && !svg.contains("<line"));
    }
}
