//! Static SVG drawings of domains, packings and meshes.
//!
//! Layers, bottom to top: domain, mesh edges (one `<path>` per quad), packed
//! circles (one `<circle>` each, colored by provenance), gap circles (dashed
//! `<ellipse>`s through each gap's tangency points) and tangency points
//! (small `<rect>` squares). Output depends only on the input.

use crate::geom::{Circle, Point, Polygon};
use crate::io::{write_text, IoError};
use crate::mesh::QuadMesh;
use crate::packing::{gap::fit_circle, Packing, Provenance};
use std::fmt::Write as _;
use std::path::Path;

/// What to draw. The domain is always drawn.
#[derive(Debug, Clone, Copy)]
pub struct Scene<'a> {
    pub domain: &'a Polygon,
    pub packing: Option<&'a Packing>,
    pub mesh: Option<&'a QuadMesh>,
    /// Circles added by a mesher on top of the packing.
    pub extra_circles: &'a [Circle],
}

impl<'a> Scene<'a> {
    pub fn domain(domain: &'a Polygon) -> Self {
        Scene { domain, packing: None, mesh: None, extra_circles: &[] }
    }
}

fn color(tag: Provenance) -> &'static str {
    match tag {
        Provenance::VertexProtection => "#1f77b4",
        Provenance::HoleConnector => "#9467bd",
        Provenance::Simplifier => "#2ca02c",
        Provenance::BoundaryReplacement => "#ff7f0e",
        Provenance::Auxiliary => "#d62728",
    }
}

/// SVG points are flipped vertically so that y grows upwards.
fn xy(p: Point) -> (f64, f64) {
    (p.x, -p.y)
}

fn loop_points(l: &[Point]) -> String {
    l.iter().map(|&p| {
        let (x, y) = xy(p);
        format!("{x},{y}")
    })
    .collect::<Vec<_>>()
    .join(" ")
}

fn circle_element(out: &mut String, c: &Circle, stroke: &str) {
    let (x, y) = xy(c.center);
    let _ = writeln!(out, r#"    <circle cx="{x}" cy="{y}" r="{}" stroke="{stroke}"/>"#, c.radius);
}

/// The drawing as an SVG document.
pub fn svg_document(scene: &Scene) -> String {
    let all: Vec<Point> = scene.domain.loops().into_iter().flatten().copied().collect();
    let (mut lo, mut hi) = (all[0], all[0]);
    for p in &all {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let pad = 0.05 * (hi.x - lo.x).max(hi.y - lo.y);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let dot = 0.004 * w.max(h);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {w} {h}" width="800" height="{}">"#,
        lo.x - pad,
        -hi.y - pad,
        (800.0 * h / w).round()
    );
    s.push_str("  <g id=\"domain\" fill=\"#f4f1e8\" stroke=\"black\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\">\n");
    for l in scene.domain.loops() {
        let _ = writeln!(s, r#"    <polygon points="{}"/>"#, loop_points(l));
    }
    s.push_str("  </g>\n");

    s.push_str("  <g id=\"mesh\" fill=\"none\" stroke=\"#444\" stroke-width=\"0.6\" vector-effect=\"non-scaling-stroke\">\n");
    if let Some(m) = scene.mesh {
        for k in 0..m.quads.len() {
            let [a, b, c, d] = m.quad_points(k).map(xy);
            let _ = writeln!(
                s,
                r#"    <path d="M{},{} L{},{} L{},{} L{},{} Z"/>"#,
                a.0, a.1, b.0, b.1, c.0, c.1, d.0, d.1
            );
        }
    }
    s.push_str("  </g>\n");

    s.push_str("  <g id=\"circles\" fill=\"none\" stroke-width=\"0.8\" vector-effect=\"non-scaling-stroke\">\n");
    if let Some(pk) = scene.packing {
        for c in &pk.circles {
            circle_element(&mut s, &c.circle, color(c.tag));
        }
    }
    for c in scene.extra_circles {
        circle_element(&mut s, c, color(Provenance::Auxiliary));
    }
    s.push_str("  </g>\n");

    s.push_str("  <g id=\"gap-circles\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\" stroke-width=\"0.5\" vector-effect=\"non-scaling-stroke\">\n");
    if let Some(pk) = scene.packing {
        for g in pk.gaps() {
            let corners = g.corners();
            if corners.len() < 3 {
                continue;
            }
            if let Ok((c, _)) = fit_circle(&corners) {
                let (x, y) = xy(c.center);
                let _ = writeln!(s, r#"    <ellipse cx="{x}" cy="{y}" rx="{r}" ry="{r}"/>"#, r = c.radius);
            }
        }
    }
    s.push_str("  </g>\n");

    s.push_str("  <g id=\"tangencies\" fill=\"black\">\n");
    if let Some(pk) = scene.packing {
        for t in &pk.tangencies {
            let (x, y) = xy(t.point);
            let _ = writeln!(s, r#"    <rect x="{}" y="{}" width="{dot}" height="{dot}"/>"#, x - 0.5 * dot, y - 0.5 * dot);
        }
    }
    s.push_str("  </g>\n</svg>\n");
    s
}

/// Write the drawing to `path`.
pub fn render_svg(scene: &Scene, path: &Path) -> Result<(), IoError> {
    write_text(path, &svg_document(scene))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::unit_square;
    use crate::packing::{pack, PackMode, PackOptions};

    fn count(doc: &str, tag: &str) -> usize {
        doc.matches(&format!("<{tag} ")).count()
    }

    #[test]
    fn empty_scene_draws_only_the_domain() {
        let poly = unit_square();
        let doc = svg_document(&Scene::domain(&poly));
        assert!(doc.starts_with("<svg"));
        assert!(doc.trim_end().ends_with("</svg>"));
        assert_eq!(count(&doc, "polygon"), 1);
        assert_eq!(count(&doc, "path") + count(&doc, "circle") + count(&doc, "rect"), 0);
    }

    #[test]
    fn one_circle_element_per_packed_circle() {
        let poly = unit_square();
        let pk = pack(&poly, &PackOptions::new(PackMode::BoundaryCentered)).unwrap();
        let doc = svg_document(&Scene { packing: Some(&pk), ..Scene::domain(&poly) });
        assert_eq!(count(&doc, "circle"), pk.circles.len());
        assert_eq!(count(&doc, "rect"), pk.tangencies.len());
        assert_eq!(doc, svg_document(&Scene { packing: Some(&pk), ..Scene::domain(&poly) }));
    }

    #[test]
    fn holes_get_their_own_outline() {
        let poly = crate::fixtures::square_with_hole();
        assert_eq!(count(&svg_document(&Scene::domain(&poly)), "polygon"), 2);
    }
}
