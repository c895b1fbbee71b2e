use super::{bbox_diag, dist_point_segment, segments_intersect, signed_area, GeomError, Point};
use serde::{Deserialize, Serialize};

/// A boundary edge: `ring` 0 is the outer loop, `ring` k is hole k-1;
/// edge `index` runs from vertex `index` to vertex `index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub ring: usize,
    pub index: usize,
}

/// Polygonal domain: counterclockwise outer loop and clockwise holes, so the
/// domain always lies to the left of every directed edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub outer: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
}

/// Similarity map from input coordinates to the unit bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub offset: Point,
    pub scale: f64,
}

impl Normalization {
    pub fn forward(&self, p: Point) -> Point {
        (p - self.offset) * self.scale
    }

    pub fn inverse(&self, p: Point) -> Point {
        p / self.scale + self.offset
    }
}

impl Polygon {
    /// Validates and reorients loops silently.
    pub fn new(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Self, GeomError> {
        Self::from_loops(outer, holes).map(|(p, _)| p)
    }

    /// Validates, reorients loops when needed, and reports each reorientation.
    pub fn from_loops(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<(Self, Vec<String>), GeomError> {
        let mut warnings = Vec::new();
        let mut loops: Vec<Vec<Point>> = std::iter::once(outer).chain(holes).collect();
        for (k, lp) in loops.iter_mut().enumerate() {
            check_loop(k, lp)?;
            let ccw = signed_area(lp) > 0.0;
            let want_ccw = k == 0;
            if ccw != want_ccw {
                lp.reverse();
                let which = if k == 0 { "outer loop".to_string() } else { format!("hole {}", k - 1) };
                let dir = if want_ccw { "counterclockwise" } else { "clockwise" };
                warnings.push(format!("{which} reoriented to {dir}"));
            }
        }
        let outer = loops.remove(0);
        let poly = Polygon { outer, holes: loops };
        poly.check_nesting()?;
        Ok((poly, warnings))
    }

    fn check_nesting(&self) -> Result<(), GeomError> {
        let loops = self.loops();
        for k in 1..loops.len() {
            if !point_in_loop(&self.outer, loops[k][0]) {
                return Err(invalid(k, "hole is not inside the outer loop"));
            }
            for j in 0..loops.len() {
                if j == k {
                    continue;
                }
                if j > 0 && point_in_loop(loops[j], loops[k][0]) {
                    return Err(invalid(k, "hole is nested inside another hole"));
                }
                if j < k && loops_touch(loops[j], loops[k]) {
                    return Err(invalid(k, &format!("loop touches loop {j}")));
                }
            }
        }
        Ok(())
    }

    pub fn loops(&self) -> Vec<&[Point]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice())).collect()
    }

    pub fn ring(&self, ring: usize) -> &[Point] {
        if ring == 0 {
            &self.outer
        } else {
            &self.holes[ring - 1]
        }
    }

    /// Total vertex count.
    pub fn n(&self) -> usize {
        self.outer.len() + self.holes.iter().map(Vec::len).sum::<usize>()
    }

    pub fn hole_count(&self) -> usize {
        self.holes.len()
    }

    pub fn edge(&self, e: EdgeRef) -> (Point, Point) {
        let lp = self.ring(e.ring);
        (lp[e.index], lp[(e.index + 1) % lp.len()])
    }

    pub fn next_edge(&self, e: EdgeRef) -> EdgeRef {
        EdgeRef { ring: e.ring, index: (e.index + 1) % self.ring(e.ring).len() }
    }

    pub fn prev_edge(&self, e: EdgeRef) -> EdgeRef {
        let n = self.ring(e.ring).len();
        EdgeRef { ring: e.ring, index: (e.index + n - 1) % n }
    }

    pub fn edges(&self) -> Vec<(EdgeRef, Point, Point)> {
        let mut out = Vec::with_capacity(self.n());
        for (ring, lp) in self.loops().into_iter().enumerate() {
            for index in 0..lp.len() {
                out.push((EdgeRef { ring, index }, lp[index], lp[(index + 1) % lp.len()]));
            }
        }
        out
    }

    pub fn area(&self) -> f64 {
        self.loops().into_iter().map(signed_area).sum()
    }

    pub fn diameter(&self) -> f64 {
        bbox_diag(&self.outer)
    }

    /// Even-odd containment over all loops.
    pub fn contains(&self, p: Point) -> bool {
        self.loops().into_iter().filter(|lp| point_in_loop(lp, p)).count() % 2 == 1
    }

    pub fn dist_to_boundary(&self, p: Point) -> f64 {
        self.edges().into_iter().map(|(_, a, b)| dist_point_segment(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// True iff the open segment misses every boundary edge and its midpoint is inside.
    pub fn segment_inside(&self, a: Point, b: Point) -> bool {
        let tol = 1e-12;
        let len = a.dist(b);
        if len == 0.0 {
            return false;
        }
        for (_, c, d) in self.edges() {
            if open_segment_hits(a, b, c, d, tol) {
                return false;
            }
        }
        self.contains(a.mid(b))
    }

    /// Map to the unit bounding box.
    pub fn normalization(&self) -> Normalization {
        let (mut lo, mut hi) = (self.outer[0], self.outer[0]);
        for p in &self.outer {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let ext = (hi.x - lo.x).max(hi.y - lo.y);
        Normalization { offset: lo, scale: 1.0 / ext }
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Polygon {
        Polygon {
            outer: self.outer.iter().map(|p| f(*p)).collect(),
            holes: self.holes.iter().map(|h| h.iter().map(|p| f(*p)).collect()).collect(),
        }
    }

    /// Interior angle at vertex `i` of ring `ring`, in (0, 2pi).
    pub fn interior_angle(&self, ring: usize, i: usize) -> f64 {
        let lp = self.ring(ring);
        let n = lp.len();
        let din = (lp[i] - lp[(i + n - 1) % n]).unit();
        let dout = (lp[(i + 1) % n] - lp[i]).unit();
        std::f64::consts::PI - super::signed_angle(din, dout)
    }
}

fn invalid(loop_index: usize, reason: &str) -> GeomError {
    GeomError::InvalidPolygon { loop_index, reason: reason.to_string() }
}

fn check_loop(k: usize, lp: &[Point]) -> Result<(), GeomError> {
    if lp.len() < 3 {
        return Err(invalid(k, "fewer than 3 vertices"));
    }
    if lp.iter().any(|p| !p.is_finite()) {
        return Err(invalid(k, "non-finite coordinate"));
    }
    let n = lp.len();
    let scale = bbox_diag(lp);
    if scale == 0.0 || signed_area(lp).abs() <= 1e-12 * scale * scale {
        return Err(invalid(k, "zero area"));
    }
    for i in 0..n {
        if lp[i].dist(lp[(i + 1) % n]) <= 1e-12 * scale {
            return Err(invalid(k, &format!("repeated vertex {i}")));
        }
    }
    for i in 0..n {
        let (a, b) = (lp[i], lp[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (lp[j], lp[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Shared endpoint only: reject folding back onto the previous edge.
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                let u = p - shared;
                let v = q - shared;
                if u.cross(v).abs() <= 1e-12 * u.norm() * v.norm() && u.dot(v) > 0.0 {
                    return Err(invalid(k, &format!("edges {i} and {j} overlap")));
                }
                continue;
            }
            if segments_intersect(a, b, c, d, 1e-12) {
                return Err(invalid(k, &format!("self-intersection between edges {i} and {j}")));
            }
        }
    }
    Ok(())
}

fn loops_touch(a: &[Point], b: &[Point]) -> bool {
    for i in 0..a.len() {
        for j in 0..b.len() {
            if segments_intersect(a[i], a[(i + 1) % a.len()], b[j], b[(j + 1) % b.len()], 1e-12) {
                return true;
            }
        }
    }
    false
}

pub(crate) fn point_in_loop(lp: &[Point], p: Point) -> bool {
    let n = lp.len();
    let mut inside = false;
    for i in 0..n {
        let a = lp[i];
        let b = lp[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Does the open segment (a, b) meet the closed segment [c, d]?
fn open_segment_hits(a: Point, b: Point, c: Point, d: Point, tol: f64) -> bool {
    let u = b - a;
    let len2 = u.norm2();
    let scale = bbox_diag(&[a, b, c, d]);
    let eps = tol * scale;
    let oc = u.cross(c - a) / len2.sqrt();
    let od = u.cross(d - a) / len2.sqrt();
    let tc = (c - a).dot(u) / len2;
    let td = (d - a).dot(u) / len2;
    let lo = tol;
    let hi = 1.0 - tol;
    if oc.abs() <= eps && od.abs() <= eps {
        // Collinear: overlap of parameter intervals with the open segment.
        let (t0, t1) = if tc < td { (tc, td) } else { (td, tc) };
        return t1 > lo && t0 < hi;
    }
    if oc.abs() <= eps {
        return tc > lo && tc < hi;
    }
    if od.abs() <= eps {
        return td > lo && td < hi;
    }
    if oc.signum() == od.signum() {
        return false;
    }
    // Proper crossing of the line; locate it along both segments.
    let s = oc / (oc - od);
    let x = c + (d - c) * s;
    let t = (x - a).dot(u) / len2;
    t > lo && t < hi
}
