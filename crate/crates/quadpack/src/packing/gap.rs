//! Gap values, their classification, circumcircles and the bad-gap splitter.

use super::faces::{CornerKind, FaceSide, SideRef};
use crate::geom::{circumcircle, tangency_point, Circle, GeomError, Point, Tolerances};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GapKind {
    ThreeSided,
    GoodFourSided,
    BadFourSided,
    BoundaryFourSided,
    BoundaryThreeSided,
    ReflexVertexGap,
    ConvexVertexGap,
    /// Five or more sides, or a side pattern matching no case.
    Unresolved,
}

/// Geometry of one side of a gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideGeom {
    Arc(Circle),
    Segment(Point, Point),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSide {
    pub object: SideRef,
    pub geom: SideGeom,
    /// Walk start, which is also the corner shared with the previous side.
    pub start: Point,
    pub end: Point,
    pub corner: CornerKind,
}

impl GapSide {
    pub fn circle(&self) -> Option<Circle> {
        match self.geom {
            SideGeom::Arc(c) => Some(c),
            SideGeom::Segment(..) => None,
        }
    }

    pub fn circle_id(&self) -> Option<usize> {
        match self.object {
            SideRef::Circle(i) => Some(i),
            SideRef::Edge(_) => None,
        }
    }

    pub fn is_edge(&self) -> bool {
        matches!(self.object, SideRef::Edge(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub sides: Vec<GapSide>,
    pub kind: GapKind,
    /// Circle-circle and circle-edge tangency corners in walk order.
    pub tangency_points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GapError {
    #[error("gap tangency points are not cocircular (residual {0:e})")]
    CocircularityViolation(f64),
    #[error("gap has a boundary side")]
    NotAllArcs,
    #[error("gap is not a bad four-sided gap")]
    NotBad,
    #[error("splitting produced children that are not both good (margins {0:.3e}, {1:.3e})")]
    Degenerate(f64, f64),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl Gap {
    pub fn from_face(face: &[FaceSide], circles: &[Circle], edge_geom: impl Fn(SideRef) -> (Point, Point)) -> Gap {
        let sides: Vec<GapSide> = face
            .iter()
            .map(|s| GapSide {
                object: s.object,
                geom: match s.object {
                    SideRef::Circle(i) => SideGeom::Arc(circles[i]),
                    SideRef::Edge(_) => {
                        let (a, b) = edge_geom(s.object);
                        SideGeom::Segment(a, b)
                    }
                },
                start: s.start,
                end: s.end,
                corner: s.corner,
            })
            .collect();
        Gap::from_sides(sides, Tolerances::default())
    }

    /// Build a gap from its sides and classify it.
    pub fn from_sides(sides: Vec<GapSide>, tol: Tolerances) -> Gap {
        let tangency_points = sides
            .iter()
            .filter(|s| matches!(s.corner, CornerKind::Tangency | CornerKind::EdgeTangency))
            .map(|s| s.start)
            .collect();
        let mut g = Gap { sides, kind: GapKind::Unresolved, tangency_points };
        g.kind = classify_gap_tol(&g, tol);
        g
    }

    /// Gap made of circles tangent in cyclic order.
    pub fn from_circles(circles: &[(usize, Circle)]) -> Result<Gap, GeomError> {
        let n = circles.len();
        let mut sides = Vec::with_capacity(n);
        for k in 0..n {
            let (id, c) = circles[k];
            let prev = circles[(k + n - 1) % n].1;
            let next = circles[(k + 1) % n].1;
            sides.push(GapSide {
                object: SideRef::Circle(id),
                geom: SideGeom::Arc(c),
                start: tangency_point(&prev, &c)?,
                end: tangency_point(&c, &next)?,
                corner: CornerKind::Tangency,
            });
        }
        Ok(Gap::from_sides(sides, Tolerances::default()))
    }

    pub fn all_arcs(&self) -> bool {
        self.sides.iter().all(|s| !s.is_edge())
    }

    pub fn edge_sides(&self) -> usize {
        self.sides.iter().filter(|s| s.is_edge()).count()
    }

    pub fn corners(&self) -> Vec<Point> {
        self.sides.iter().map(|s| s.start).collect()
    }
}

pub fn classify_gap(g: &Gap) -> GapKind {
    classify_gap_tol(g, Tolerances::default())
}

pub fn classify_gap_tol(g: &Gap, tol: Tolerances) -> GapKind {
    let n = g.sides.len();
    let edges = g.edge_sides();
    let corner = |k: CornerKind| g.sides.iter().filter(|s| s.corner == k).count();
    match (n, edges) {
        (3, 0) => GapKind::ThreeSided,
        (4, 0) => {
            if goodness_margin(&g.corners()).map(|m| m >= -tol.eps_rel).unwrap_or(false) {
                GapKind::GoodFourSided
            } else {
                GapKind::BadFourSided
            }
        }
        (3, 1) if corner(CornerKind::EdgeTangency) == 2 => GapKind::BoundaryThreeSided,
        (3, 2) if corner(CornerKind::Vertex) == 1 => GapKind::ConvexVertexGap,
        (4, 2) if corner(CornerKind::Vertex) == 1 => GapKind::ReflexVertexGap,
        (4, 1) => GapKind::BoundaryFourSided,
        (4, 2) if corner(CornerKind::Vertex) == 0 => GapKind::BoundaryFourSided,
        _ => GapKind::Unresolved,
    }
}

/// Smallest signed distance from the circumcenter of four cyclic points to
/// their hull edges, divided by the circumradius. Non-negative means good.
pub fn goodness_margin(pts: &[Point]) -> Option<f64> {
    if pts.len() != 4 {
        return None;
    }
    let c = fit_circle(pts).ok()?.0;
    let orient = crate::geom::signed_area(pts).signum();
    let mut m = f64::INFINITY;
    for k in 0..4 {
        let a = pts[k];
        let b = pts[(k + 1) % 4];
        let d = orient * (b - a).cross(c.center - a) / a.dist(b);
        m = m.min(d / c.radius);
    }
    Some(m)
}

/// Circle through the given points (3 or 4) and the worst relative residual.
pub fn fit_circle(pts: &[Point]) -> Result<(Circle, f64), GeomError> {
    let n = pts.len();
    if n < 3 {
        return Err(GeomError::CollinearPoints);
    }
    // Pick the best-conditioned triple.
    let mut best: Option<Circle> = None;
    let mut best_area = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let area = (pts[j] - pts[i]).cross(pts[k] - pts[i]).abs();
                if area > best_area {
                    if let Ok(c) = circumcircle(pts[i], pts[j], pts[k]) {
                        best_area = area;
                        best = Some(c);
                    }
                }
            }
        }
    }
    let c = best.ok_or(GeomError::CollinearPoints)?;
    let res = pts.iter().map(|p| (p.dist(c.center) - c.radius).abs()).fold(0.0, f64::max) / c.radius;
    Ok((c, res))
}

/// Circle through all tangency points of an all-arc gap.
pub fn gap_circumcircle(g: &Gap) -> Result<Circle, GapError> {
    gap_circumcircle_tol(g, Tolerances::default())
}

pub fn gap_circumcircle_tol(g: &Gap, tol: Tolerances) -> Result<Circle, GapError> {
    if !g.all_arcs() {
        return Err(GapError::NotAllArcs);
    }
    let (c, res) = fit_circle(&g.corners())?;
    if res > 10.0 * tol.eps_rel {
        return Err(GapError::CocircularityViolation(res));
    }
    Ok(c)
}

/// How a bad gap may be split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStyle {
    /// Take the circle centered on the segment between the two opposite
    /// centers when both children are good; otherwise search the family.
    PreferCollinear,
    /// Only circles off the center line (avoids straight angles in meshes
    /// that use circle centers as vertices).
    OffAxis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Splitter {
    pub circle: Circle,
    /// Gap side indices of the two opposite circles the splitter touches.
    pub sides: (usize, usize),
    pub collinear: bool,
    /// Side indices of gap circles the splitter overlaps.
    pub overlaps: Vec<usize>,
    /// Goodness margins of the two children.
    pub margins: (f64, f64),
}

/// Split a bad four-sided gap into two good ones.
pub fn split_bad_gap(g: &Gap) -> Result<Splitter, GapError> {
    split_bad_gap_with(g, SplitStyle::PreferCollinear, Tolerances::default())
}

pub fn split_bad_gap_with(g: &Gap, style: SplitStyle, tol: Tolerances) -> Result<Splitter, GapError> {
    if g.sides.len() != 4 || !g.all_arcs() || classify_gap_tol(g, tol) != GapKind::BadFourSided {
        return Err(GapError::NotBad);
    }
    split_four_gap(g, style, tol)
}

/// Best splitter for any all-arc four-sided gap.
pub(crate) fn split_four_gap(g: &Gap, style: SplitStyle, tol: Tolerances) -> Result<Splitter, GapError> {
    let circles: Vec<Circle> = g.sides.iter().map(|s| s.circle().unwrap()).collect();
    let mut best: Option<(Splitter, (bool, f64))> = None;
    let consider = |s: Splitter, best: &mut Option<(Splitter, (bool, f64))>| {
        let score = (s.overlaps.is_empty(), s.margins.0.min(s.margins.1));
        let better = match best {
            None => true,
            Some((_, b)) => (score.0 && !b.0) || (score.0 == b.0 && score.1 > b.1),
        };
        if better {
            *best = Some((s, score));
        }
    };
    for (i, j) in [(0usize, 2usize), (1, 3)] {
        if style == SplitStyle::PreferCollinear {
            if let Some(s) = candidate(g, &circles, i, j, None, tol) {
                if s.margins.0 >= -tol.eps_rel && s.margins.1 >= -tol.eps_rel {
                    return Ok(s);
                }
            }
        }
        let (a, c) = (circles[i], circles[j]);
        let rmin = 0.5 * a.clearance(&c);
        if rmin <= 0.0 {
            continue;
        }
        for k in 1..=240 {
            let rho = rmin * (1.0 + 0.002 * 1.045f64.powi(k));
            for side in [1.0, -1.0] {
                if let Some(s) = candidate(g, &circles, i, j, Some((rho, side)), tol) {
                    consider(s, &mut best);
                }
            }
        }
    }
    match best {
        Some((s, _)) if s.margins.0 >= -tol.eps_rel && s.margins.1 >= -tol.eps_rel => Ok(s),
        Some((s, _)) => Err(GapError::Degenerate(s.margins.0, s.margins.1)),
        None => Err(GapError::Degenerate(f64::NAN, f64::NAN)),
    }
}

/// Splitter touching sides `i` and `j`; `param` = None gives the collinear one.
fn candidate(g: &Gap, circles: &[Circle], i: usize, j: usize, param: Option<(f64, f64)>, tol: Tolerances) -> Option<Splitter> {
    let (a, c) = (circles[i], circles[j]);
    let d = a.center.dist(c.center);
    let u = (c.center - a.center) / d;
    let (center, rho) = match param {
        None => {
            let rho = 0.5 * (d - a.radius - c.radius);
            if rho <= 0.0 {
                return None;
            }
            (a.center + u * (a.radius + rho), rho)
        }
        Some((rho, side)) => {
            let (ra, rc) = (a.radius + rho, c.radius + rho);
            let x = (d * d + ra * ra - rc * rc) / (2.0 * d);
            let h2 = ra * ra - x * x;
            if h2 <= 0.0 {
                return None;
            }
            (a.center + u * x + u.perp() * (side * h2.sqrt()), rho)
        }
    };
    let n = Circle::new(center, rho).ok()?;
    let ta = tangency_point(&a, &n).ok()?;
    let tc = tangency_point(&c, &n).ok()?;
    // Both contacts must lie on the gap's own arcs.
    if !on_arc(&g.sides[i], ta, tol) || !on_arc(&g.sides[j], tc, tol) {
        return None;
    }
    let t = g.corners();
    // Children: sides i..=j plus N, and sides j..=i (wrapping) plus N.
    let child1 = [t[(i + 1) % 4], t[(i + 2) % 4], tc, ta];
    let child2 = [t[(j + 1) % 4], t[(j + 2) % 4], ta, tc];
    let m1 = goodness_margin(&child1)?;
    let m2 = goodness_margin(&child2)?;
    let overlaps = (0..4)
        .filter(|&k| k != i && k != j && n.clearance(&circles[k]) < -tol.eps_rel * rho.max(circles[k].radius))
        .collect();
    Some(Splitter { circle: n, sides: (i, j), collinear: param.is_none(), overlaps, margins: (m1, m2) })
}

/// Is `p` strictly inside the clockwise arc walked by this side?
pub(crate) fn on_arc(side: &GapSide, p: Point, tol: Tolerances) -> bool {
    let Some(c) = side.circle() else { return false };
    arc_contains(&c, side.start, side.end, p, tol.eps_rel)
}

pub(crate) fn arc_contains(c: &Circle, start: Point, end: Point, p: Point, eps: f64) -> bool {
    use std::f64::consts::TAU;
    let ang = |q: Point| (q - c.center).angle();
    let s = ang(start);
    let span = {
        let v = (s - ang(end)).rem_euclid(TAU);
        if v <= 1e-15 {
            TAU
        } else {
            v
        }
    };
    let off = (s - ang(p)).rem_euclid(TAU);
    let margin = eps.max(1e-12);
    off > margin && off < span - margin
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const S3: f64 = 1.732_050_807_568_877_2;

    fn circ(x: f64, y: f64, r: f64) -> Circle {
        Circle::new(Point::new(x, y), r).unwrap()
    }

    fn gap(cs: &[Circle]) -> Gap {
        let v: Vec<(usize, Circle)> = cs.iter().copied().enumerate().collect();
        Gap::from_circles(&v).unwrap()
    }

    /// Clockwise arc orientation needs the circles listed counterclockwise around the gap.
    fn symmetric4() -> Gap {
        let r = 2f64.sqrt();
        gap(&[circ(2.0, 0.0, r), circ(0.0, 2.0, r), circ(-2.0, 0.0, r), circ(0.0, -2.0, r)])
    }

    /// Four circles A, B, C, D cyclically tangent, with A and C resting on a
    /// large D-like circle; the shape parameter `w` moves the circumcenter.
    fn family(w: f64) -> Option<Gap> {
        // D: radius 100 below; A and C unit circles on D, B unit circle on A and C.
        let big = circ(0.0, -101.0, 100.0);
        let place = |x: f64| {
            let ang = (x / 101.0).asin();
            Point::new(101.0 * ang.sin(), -101.0 + 101.0 * ang.cos())
        };
        let a = circ(place(-w).x, place(-w).y, 1.0);
        let c = circ(place(w).x, place(w).y, 1.0);
        let h2 = 4.0 - (c.center.x - a.center.x).powi(2) / 4.0;
        if h2 <= 0.0 {
            return None;
        }
        let b = circ(0.0, a.center.y + h2.sqrt(), 1.0);
        // Counterclockwise around the gap: D (bottom), C (right), B (top), A (left).
        Some(gap(&[big, c, b, a]))
    }

    #[test]
    fn symmetric_four_gap_is_good() {
        let g = symmetric4();
        assert_eq!(g.kind, GapKind::GoodFourSided);
        let c = gap_circumcircle(&g).unwrap();
        assert_relative_eq!(c.center.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.center.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.radius, 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn three_gap_circumcircle() {
        let g = gap(&[circ(0.0, 0.0, 1.0), circ(2.0, 0.0, 1.0), circ(1.0, S3, 1.0)]);
        assert_eq!(g.kind, GapKind::ThreeSided);
        let c = gap_circumcircle(&g).unwrap();
        assert_relative_eq!(c.center.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.center.y, 1.0 / S3, epsilon = 1e-12);
        assert_relative_eq!(c.radius, 1.0 / S3, epsilon = 1e-12);
    }

    fn hull_oracle(pts: &[Point]) -> bool {
        // Independent: circumcenter from perpendicular bisectors, then barycentric
        // membership in the two triangles of the quad.
        let bis = |p: Point, q: Point| (p.mid(q), (q - p).perp());
        let (m1, d1) = bis(pts[0], pts[1]);
        let (m2, d2) = bis(pts[1], pts[2]);
        let c = crate::geom::line_intersection(m1, d1, m2, d2).unwrap();
        let in_tri = |a: Point, b: Point, cc: Point| {
            let s1 = (b - a).cross(c - a);
            let s2 = (cc - b).cross(c - b);
            let s3 = (a - cc).cross(c - cc);
            (s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0) || (s1 <= 0.0 && s2 <= 0.0 && s3 <= 0.0)
        };
        in_tri(pts[0], pts[1], pts[2]) || in_tri(pts[0], pts[2], pts[3])
    }

    #[test]
    fn large_circle_gap_classification_matches_hull_oracle() {
        let mut saw_bad = false;
        for k in 1..200 {
            let w = 1.0 + 0.005 * k as f64;
            let Some(g) = family(w) else { continue };
            assert_eq!(g.sides.len(), 4);
            let good = hull_oracle(&g.corners());
            assert_eq!(g.kind == GapKind::GoodFourSided, good, "w = {w}");
            saw_bad |= !good;
        }
        assert!(saw_bad);
    }

    fn a_bad_gap() -> Gap {
        (1..200)
            .filter_map(|k| family(1.0 + 0.005 * k as f64))
            .find(|g| g.kind == GapKind::BadFourSided)
            .unwrap()
    }

    #[test]
    fn bad_gap_split_children_good() {
        let g = a_bad_gap();
        for style in [SplitStyle::PreferCollinear, SplitStyle::OffAxis] {
            let s = split_bad_gap_with(&g, style, Tolerances::default()).unwrap();
            let cs: Vec<Circle> = g.sides.iter().map(|s| s.circle().unwrap()).collect();
            let (i, j) = s.sides;
            for k in [i, j] {
                assert!(s.circle.clearance(&cs[k]).abs() < 1e-9);
            }
            // Rebuild both children as gaps and classify them independently.
            let mut ids: Vec<(usize, Circle)> = cs.iter().copied().enumerate().collect();
            ids.push((4, s.circle));
            let child = |range: Vec<usize>| {
                let v: Vec<(usize, Circle)> = range.into_iter().map(|k| ids[k]).collect();
                Gap::from_circles(&v).unwrap().kind
            };
            assert_eq!(child(vec![i, (i + 1) % 4, j, 4]), GapKind::GoodFourSided);
            assert_eq!(child(vec![j, (j + 1) % 4, i, 4]), GapKind::GoodFourSided);
            if style == SplitStyle::OffAxis {
                assert!(!s.collinear);
            }
        }
    }

    #[test]
    fn symmetric_bad_gap_splitter_on_axis() {
        // The family is mirror symmetric about x = 0; the splitter keeps it.
        let g = a_bad_gap();
        let s = split_bad_gap(&g).unwrap();
        assert!(s.collinear);
        assert!(s.circle.center.x.abs() < 1e-9);
    }

    #[test]
    fn good_gap_rejected() {
        assert_eq!(split_bad_gap(&symmetric4()), Err(GapError::NotBad));
    }
}
