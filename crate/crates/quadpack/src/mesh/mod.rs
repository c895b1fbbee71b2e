//! Conforming quadrilateral meshes, their combinatorial validators and
//! per-element quality metrics.

mod builder;

pub use builder::{MeshBuilder, VertexKey};

use crate::geom::{circumcircle, signed_area, Point, Polygon, Tolerances};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("quad is not simple")]
    NonSimpleQuad,
    #[error("malformed mesh: {0}")]
    Malformed(String),
    #[error("mesh JSON: {0}")]
    Json(String),
}

/// Quadrilateral mesh with counterclockwise quads.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuadMesh {
    pub vertices: Vec<Point>,
    pub boundary: Vec<bool>,
    pub quads: Vec<[usize; 4]>,
}

/// The counts x (boundary vertices), i (interior vertices), q (quads),
/// e (edges) and h (holes of the domain).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub x: usize,
    pub i: usize,
    pub q: usize,
    pub e: usize,
    pub h: usize,
}

#[derive(Serialize, Deserialize)]
struct MeshJson {
    vertices: Vec<[f64; 2]>,
    boundary: Vec<bool>,
    quads: Vec<[usize; 4]>,
}

impl QuadMesh {
    pub fn quad_points(&self, k: usize) -> [Point; 4] {
        self.quads[k].map(|v| self.vertices[v])
    }

    /// Undirected edges with the quads using them, keyed by sorted vertex pair.
    pub fn edge_table(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut t: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, q) in self.quads.iter().enumerate() {
            for s in 0..4 {
                let (a, b) = (q[s], q[(s + 1) % 4]);
                t.entry((a.min(b), a.max(b))).or_default().push(k);
            }
        }
        t
    }

    pub fn counts(&self, holes: usize) -> Counts {
        let x = self.boundary.iter().filter(|b| **b).count();
        Counts { x, i: self.vertices.len() - x, q: self.quads.len(), e: self.edge_table().len(), h: holes }
    }

    pub fn area(&self) -> f64 {
        (0..self.quads.len()).map(|k| signed_area(&self.quad_points(k))).sum()
    }

    /// Apply a point map (for example, undoing input normalization).
    pub fn map(&self, f: impl Fn(Point) -> Point) -> QuadMesh {
        QuadMesh { vertices: self.vertices.iter().map(|p| f(*p)).collect(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        let j = MeshJson {
            vertices: self.vertices.iter().map(|p| [p.x, p.y]).collect(),
            boundary: self.boundary.clone(),
            quads: self.quads.clone(),
        };
        serde_json::to_string(&j).expect("mesh serializes")
    }

    pub fn from_json(s: &str) -> Result<QuadMesh, MeshError> {
        let j: MeshJson = serde_json::from_str(s).map_err(|e| MeshError::Json(e.to_string()))?;
        if j.boundary.len() != j.vertices.len() {
            return Err(MeshError::Malformed("boundary flags do not match vertices".into()));
        }
        if let Some(q) = j.quads.iter().find(|q| q.iter().any(|&v| v >= j.vertices.len())) {
            return Err(MeshError::Malformed(format!("quad {q:?} references a missing vertex")));
        }
        Ok(QuadMesh {
            vertices: j.vertices.iter().map(|v| Point::new(v[0], v[1])).collect(),
            boundary: j.boundary,
            quads: j.quads,
        })
    }

    /// Object File Format with quads as four-vertex faces.
    pub fn to_off(&self) -> String {
        let mut s = format!("OFF\n{} {} 0\n", self.vertices.len(), self.quads.len());
        for p in &self.vertices {
            s.push_str(&format!("{} {} 0\n", p.x, p.y));
        }
        for q in &self.quads {
            s.push_str(&format!("4 {} {} {} {}\n", q[0], q[1], q[2], q[3]));
        }
        s
    }
}

/// One failed check of [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    NonFiniteVertex { vertex: usize },
    IndexOutOfRange { quad: usize },
    RepeatedVertex { quad: usize },
    NotPositive { quad: usize, area: f64 },
    NonSimple { quad: usize },
    EdgeOveruse { a: usize, b: usize, uses: usize },
    OrientationClash { a: usize, b: usize },
    OpenEdgeInside { a: usize, b: usize },
    BoundaryFlag { vertex: usize, flagged: bool, on_open_edge: bool },
    CountIdentity { four_q: i64, two_e_minus_x: i64 },
    Euler { lhs: i64, rhs: i64 },
    Area { mesh: f64, domain: f64, relative: f64 },
    Outside { quad: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub counts: Counts,
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn quad_is_simple(p: &[Point; 4]) -> bool {
    let cross = |a: Point, b: Point, c: Point, d: Point| crate::geom::segments_intersect(a, b, c, d, 0.0);
    !cross(p[0], p[1], p[2], p[3]) && !cross(p[1], p[2], p[3], p[0])
}

fn on_boundary(poly: &Polygon, a: Point, b: Point, tol: f64) -> bool {
    poly.edges().into_iter().any(|(_, c, d)| {
        crate::geom::dist_point_segment(a, c, d) <= tol && crate::geom::dist_point_segment(b, c, d) <= tol
    })
}

/// Conformity, the two counting identities, area coverage and containment.
pub fn validate(mesh: &QuadMesh, poly: &Polygon) -> Validation {
    let mut v = Vec::new();
    let nv = mesh.vertices.len();
    let tol = 1e-9 * poly.diameter();
    for (k, p) in mesh.vertices.iter().enumerate() {
        if !p.is_finite() {
            v.push(Violation::NonFiniteVertex { vertex: k });
        }
    }
    let mut usable = Vec::with_capacity(mesh.quads.len());
    for (k, q) in mesh.quads.iter().enumerate() {
        if q.iter().any(|&i| i >= nv) {
            v.push(Violation::IndexOutOfRange { quad: k });
            continue;
        }
        if (0..4).any(|a| (a + 1..4).any(|b| q[a] == q[b])) {
            v.push(Violation::RepeatedVertex { quad: k });
            continue;
        }
        let p = mesh.quad_points(k);
        let area = signed_area(&p);
        if !(area > 0.0) {
            v.push(Violation::NotPositive { quad: k, area });
        }
        if !quad_is_simple(&p) {
            v.push(Violation::NonSimple { quad: k });
        }
        usable.push(k);
    }
    if usable.len() < mesh.quads.len() {
        let counts = Counts { x: 0, i: 0, q: mesh.quads.len(), e: 0, h: poly.hole_count() };
        return Validation { counts, violations: v };
    }

    // (a) conformity: every edge used once or twice, opposite directions when
    // twice, and singly used edges lie on the domain boundary.
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for q in &mesh.quads {
        for s in 0..4 {
            *directed.entry((q[s], q[(s + 1) % 4])).or_default() += 1;
        }
    }
    let table = mesh.edge_table();
    let mut on_open = vec![false; nv];
    for (&(a, b), users) in &table {
        match users.len() {
            1 => {
                on_open[a] = true;
                on_open[b] = true;
                if !on_boundary(poly, mesh.vertices[a], mesh.vertices[b], tol) {
                    v.push(Violation::OpenEdgeInside { a, b });
                }
            }
            2 => {
                if directed.get(&(a, b)).copied().unwrap_or(0) != 1 {
                    v.push(Violation::OrientationClash { a, b });
                }
            }
            n => v.push(Violation::EdgeOveruse { a, b, uses: n }),
        }
    }
    for (k, (&flagged, &open)) in mesh.boundary.iter().zip(&on_open).enumerate() {
        if flagged != open {
            v.push(Violation::BoundaryFlag { vertex: k, flagged, on_open_edge: open });
        }
    }

    // (b), (c) counting identities in exact integer arithmetic.
    let c = mesh.counts(poly.hole_count());
    let (x, i, q, e) = (c.x as i64, c.i as i64, c.q as i64, c.e as i64);
    if 4 * q != 2 * e - x {
        v.push(Violation::CountIdentity { four_q: 4 * q, two_e_minus_x: 2 * e - x });
    }
    let rhs = 1 - poly.hole_count() as i64;
    if x + i + q - e != rhs {
        v.push(Violation::Euler { lhs: x + i + q - e, rhs });
    }

    // (d) area coverage.
    let (ma, da) = (mesh.area(), poly.area());
    let rel = (ma - da).abs() / da;
    if !(rel <= 1e-6) {
        v.push(Violation::Area { mesh: ma, domain: da, relative: rel });
    }

    // (e) containment: interior edges stay inside, centroids inside.
    for (k, quad) in mesh.quads.iter().enumerate() {
        let p = mesh.quad_points(k);
        let centroid = (p[0] + p[1] + p[2] + p[3]) / 4.0;
        let mut ok = poly.contains(centroid);
        for s in 0..4 {
            let (a, b) = (quad[s], quad[(s + 1) % 4]);
            if table[&(a.min(b), a.max(b))].len() == 2 && !poly.segment_inside(p[s], p[(s + 1) % 4]) {
                ok = false;
            }
        }
        if !ok {
            v.push(Violation::Outside { quad: k });
        }
    }
    Validation { counts: c, violations: v }
}

/// Shape measures of one quad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadMetrics {
    /// Interior angles in degrees, one per vertex.
    pub angles: [f64; 4],
    pub max_angle: f64,
    pub min_angle: f64,
    /// Product of opposite side lengths, first pair over second.
    pub cross_ratio: f64,
    pub is_kite: bool,
    pub is_cyclic: bool,
    pub has_opposite_right_angles: bool,
}

/// Interior angles (degrees) of a counterclockwise quad.
pub fn quad_angles(p: &[Point; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for k in 0..4 {
        let u = p[(k + 1) % 4] - p[k];
        let w = p[(k + 3) % 4] - p[k];
        let mut a = u.cross(w).atan2(u.dot(w));
        if a < 0.0 {
            a += std::f64::consts::TAU;
        }
        out[k] = a.to_degrees();
    }
    out
}

fn cyclic(p: &[Point; 4], eps: f64) -> bool {
    let triples = [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2)];
    let mut best: Option<(f64, bool)> = None;
    for (a, b, c, d) in triples {
        let area = (p[b] - p[a]).cross(p[c] - p[a]).abs();
        if let Ok(circ) = circumcircle(p[a], p[b], p[c]) {
            let ok = (p[d].dist(circ.center) - circ.radius).abs() <= eps * circ.radius;
            if best.map(|(ar, _)| area > ar).unwrap_or(true) {
                best = Some((area, ok));
            }
        }
    }
    best.map(|(_, ok)| ok).unwrap_or(false)
}

pub fn quad_metrics(p: &[Point; 4], tol: Tolerances) -> Result<QuadMetrics, MeshError> {
    let oriented = if signed_area(p) < 0.0 { [p[0], p[3], p[2], p[1]] } else { *p };
    if !quad_is_simple(&oriented) || signed_area(&oriented) == 0.0 {
        return Err(MeshError::NonSimpleQuad);
    }
    let angles = quad_angles(&oriented);
    let s = [0, 1, 2, 3].map(|k| oriented[k].dist(oriented[(k + 1) % 4]));
    let scale = s.iter().cloned().fold(0.0, f64::max);
    let eq = |a: f64, b: f64| (a - b).abs() <= tol.eps_rel * scale;
    let right = |a: f64| (a - 90.0).abs() <= tol.eps_angle.to_degrees();
    Ok(QuadMetrics {
        angles,
        max_angle: angles.iter().cloned().fold(f64::MIN, f64::max),
        min_angle: angles.iter().cloned().fold(f64::MAX, f64::min),
        cross_ratio: s[0] * s[2] / (s[1] * s[3]),
        is_kite: (eq(s[0], s[1]) && eq(s[2], s[3])) || (eq(s[1], s[2]) && eq(s[3], s[0])),
        is_cyclic: cyclic(&oriented, tol.eps_rel),
        has_opposite_right_angles: (right(angles[0]) && right(angles[2])) || (right(angles[1]) && right(angles[3])),
    })
}

/// Largest interior angle over all quads, in degrees.
pub fn max_angle(mesh: &QuadMesh) -> f64 {
    (0..mesh.quads.len())
        .flat_map(|k| quad_angles(&mesh.quad_points(k)))
        .fold(0.0, f64::max)
}

/// Quads per polygon vertex.
pub fn element_count_ratio(mesh: &QuadMesh, poly: &Polygon) -> f64 {
    mesh.quads.len() as f64 / poly.n() as f64
}

/// Aggregate quality of a mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub per_quad: Vec<QuadMetrics>,
    pub max_angle: f64,
    pub min_angle: f64,
    pub q_over_n: f64,
    pub area_residual: f64,
    /// 4q - (2e - x) and (x + i + q - e) - (1 - h).
    pub euler_residuals: [i64; 2],
    pub kite_fraction: f64,
    pub cyclic_fraction: f64,
    pub right_angle_fraction: f64,
    pub max_cross_ratio_deviation: f64,
    pub counts: Counts,
}

pub fn quality_report(mesh: &QuadMesh, poly: &Polygon, tol: Tolerances) -> QualityReport {
    let per_quad: Vec<QuadMetrics> = (0..mesh.quads.len())
        .filter_map(|k| quad_metrics(&mesh.quad_points(k), tol).ok())
        .collect();
    let q = mesh.quads.len().max(1) as f64;
    let frac = |f: fn(&QuadMetrics) -> bool| per_quad.iter().filter(|m| f(m)).count() as f64 / q;
    let c = mesh.counts(poly.hole_count());
    let (x, i, qq, e) = (c.x as i64, c.i as i64, c.q as i64, c.e as i64);
    QualityReport {
        max_angle: per_quad.iter().map(|m| m.max_angle).fold(0.0, f64::max),
        min_angle: per_quad.iter().map(|m| m.min_angle).fold(360.0, f64::min),
        q_over_n: element_count_ratio(mesh, poly),
        area_residual: (mesh.area() - poly.area()).abs() / poly.area(),
        euler_residuals: [4 * qq - (2 * e - x), (x + i + qq - e) - (1 - poly.hole_count() as i64)],
        kite_fraction: frac(|m| m.is_kite),
        cyclic_fraction: frac(|m| m.is_cyclic),
        right_angle_fraction: frac(|m| m.has_opposite_right_angles),
        max_cross_ratio_deviation: per_quad.iter().map(|m| (m.cross_ratio - 1.0).abs()).fold(0.0, f64::max),
        counts: c,
        per_quad,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square() -> Polygon {
        crate::fixtures::unit_square()
    }

    fn single() -> QuadMesh {
        QuadMesh {
            vertices: vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)],
            boundary: vec![true; 4],
            quads: vec![[0, 1, 2, 3]],
        }
    }

    fn grid2() -> QuadMesh {
        let mut vertices = Vec::new();
        for j in 0..3 {
            for i in 0..3 {
                vertices.push(pt(i as f64 * 0.5, j as f64 * 0.5));
            }
        }
        let boundary = (0..9).map(|k| k != 4).collect();
        let id = |i: usize, j: usize| j * 3 + i;
        let quads = (0..2)
            .flat_map(|j| (0..2).map(move |i| [id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]))
            .collect();
        QuadMesh { vertices, boundary, quads }
    }

    #[test]
    fn single_quad_counts() {
        let r = validate(&single(), &square());
        assert!(r.is_ok(), "{:?}", r.violations);
        assert_eq!(r.counts, Counts { x: 4, i: 0, q: 1, e: 4, h: 0 });
    }

    #[test]
    fn grid_counts() {
        let r = validate(&grid2(), &square());
        assert!(r.is_ok(), "{:?}", r.violations);
        assert_eq!(r.counts, Counts { x: 8, i: 1, q: 4, e: 12, h: 0 });
        assert_relative_eq!(max_angle(&grid2()), 90.0, epsilon = 1e-12);
    }

    #[test]
    fn t_junction_reported() {
        // Left half as one quad, right half as two: (0.5, 0.5) hangs on the left quad's side.
        let m = QuadMesh {
            vertices: vec![
                pt(0.0, 0.0),
                pt(0.5, 0.0),
                pt(1.0, 0.0),
                pt(1.0, 0.5),
                pt(1.0, 1.0),
                pt(0.5, 1.0),
                pt(0.0, 1.0),
                pt(0.5, 0.5),
            ],
            boundary: vec![true, true, true, true, true, true, true, false],
            quads: vec![[0, 1, 5, 6], [1, 2, 3, 7], [7, 3, 4, 5]],
        };
        let r = validate(&m, &square());
        assert!(r.violations.iter().any(|v| matches!(v, Violation::OpenEdgeInside { .. })));
    }

    #[test]
    fn area_shortfall_reported() {
        let mut m = single();
        m.vertices[2] = pt(0.9, 0.9);
        let r = validate(&m, &square());
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Area { .. })));
    }

    #[test]
    fn kite_example() {
        let m = quad_metrics(
            &[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 0.5773502692), pt(0.5, 0.8660254038)],
            Tolerances::new(1e-9, 1e-6).unwrap(),
        );
        // The literal coordinates carry ten digits; use the exact values for the flag.
        let s3 = 3f64.sqrt();
        let exact = quad_metrics(
            &[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0 / s3), pt(0.5, s3 / 2.0)],
            Tolerances::default(),
        )
        .unwrap();
        assert_relative_eq!(m.unwrap().cross_ratio, 1.0, epsilon = 1e-9);
        assert_relative_eq!(exact.cross_ratio, 1.0, epsilon = 1e-12);
        assert!(exact.is_kite);
    }

    #[test]
    fn square_metrics() {
        let m = quad_metrics(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)], Tolerances::default()).unwrap();
        assert_relative_eq!(m.cross_ratio, 1.0);
        assert!(m.is_kite && m.is_cyclic && m.has_opposite_right_angles);
    }

    #[test]
    fn rectangle_metrics() {
        let m = quad_metrics(&[pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 1.0), pt(0.0, 1.0)], Tolerances::default()).unwrap();
        assert_relative_eq!(m.cross_ratio, 4.0);
        assert!(!m.is_kite && m.is_cyclic);
    }

    #[test]
    fn sheared_parallelogram_angle() {
        let m = QuadMesh {
            vertices: vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(3.0, 1.0), pt(1.0, 1.0)],
            boundary: vec![true; 4],
            quads: vec![[0, 1, 2, 3]],
        };
        assert_relative_eq!(max_angle(&m), 135.0, epsilon = 1e-12);
    }

    #[test]
    fn count_ratio() {
        let mut vertices = Vec::new();
        for j in 0..5 {
            for i in 0..5 {
                vertices.push(pt(i as f64 * 0.25, j as f64 * 0.25));
            }
        }
        let quads: Vec<[usize; 4]> = (0..4)
            .flat_map(|j| (0..4).map(move |i| [j * 5 + i, j * 5 + i + 1, (j + 1) * 5 + i + 1, (j + 1) * 5 + i]))
            .collect();
        let m = QuadMesh { boundary: vec![false; 25], vertices, quads };
        assert_eq!(m.quads.len(), 16);
        assert_relative_eq!(element_count_ratio(&m, &square()), 4.0);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut m = grid2();
        m.vertices[4] = pt(0.1 + 0.2, 1.0 / 3.0);
        let back = QuadMesh::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(m.to_off().starts_with("OFF\n9 4 0\n"));
    }

    proptest! {
        #[test]
        fn cross_ratio_similarity_invariant(
            pts in prop::array::uniform4((-5.0f64..5.0, -5.0f64..5.0)),
            angle in 0.0f64..6.3, scale in 0.1f64..10.0, dx in -3.0f64..3.0, dy in -3.0f64..3.0,
        ) {
            let p = pts.map(|(x, y)| pt(x, y));
            let Ok(m) = quad_metrics(&p, Tolerances::default()) else { return Ok(()) };
            let rot = Point::from_angle(angle);
            let t = p.map(|q| pt(q.x * rot.x - q.y * rot.y, q.x * rot.y + q.y * rot.x) * scale + pt(dx, dy));
            let n = quad_metrics(&t, Tolerances::default()).unwrap();
            prop_assert!((m.cross_ratio - n.cross_ratio).abs() <= 1e-12 * m.cross_ratio.max(1.0) * 10.0);
        }

        #[test]
        fn kites_have_unit_cross_ratio(a in 0.1f64..5.0, b in 0.1f64..5.0, t in 0.05f64..3.0, angle in 0.0f64..6.3) {
            // Kite symmetric about the x-axis: apex (0,0), wings at (t, +-h), tail on the axis.
            let h = a.min(b) * 0.9;
            let wing = (a * a - h * h).sqrt();
            let tail = wing + (b * b - h * h).sqrt() * t.clamp(0.1, 1.0);
            let rot = Point::from_angle(angle);
            let r = |q: Point| pt(q.x * rot.x - q.y * rot.y, q.x * rot.y + q.y * rot.x);
            let k = [pt(0.0, 0.0), pt(wing, -h), pt(tail, 0.0), pt(wing, h)].map(r);
            if let Ok(m) = quad_metrics(&k, Tolerances::default()) {
                if m.is_kite {
                    prop_assert!((m.cross_ratio - 1.0).abs() <= 1e-9);
                }
            }
        }
    }
}
