//! Refinement of a kite mesh into quads with no angle above 120 degrees.
//! Each kite is cut along a diagonal into two triangles, and each triangle
//! into three quads by spokes that leave an interior point 120 degrees apart
//! and end at the kite edge midpoints and on the diagonal.

use super::{kite::mesh_kites_with, MeshingError};
use crate::geom::{line_intersection, line_param, signed_area, Point, Polygon, Tolerances};
use crate::mesh::{quad_angles, MeshBuilder, QuadMesh, VertexKey};
use crate::packing::{pack, PackMode, PackOptions};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which of the splitting rules a kite used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KiteCase {
    /// Both apex angles below 120: cut across the axis.
    Sharp,
    /// Both apex angles above 60: cut along the axis.
    Blunt,
    /// One apex at least 120, the other at most 60: cut along the axis.
    Mixed,
}

/// Refinement of one kite. Points `0..4` are its corners, `4..8` the side
/// midpoints (side `k` joins corners `k` and `k+1`), the rest are private.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Subdivision {
    pub points: Vec<Point>,
    pub quads: Vec<[usize; 4]>,
    pub case: KiteCase,
    pub max_angle: f64,
}

const LIMIT_DEG: f64 = 120.0;

/// Largest interior angle of a strictly convex CCW quad, or infinity.
fn quad_max(q: &[Point; 4]) -> f64 {
    if signed_area(q) <= 0.0 {
        return f64::INFINITY;
    }
    let a = quad_angles(q);
    if a.iter().any(|x| !(*x > 0.0 && *x < 180.0)) {
        return f64::INFINITY;
    }
    a.iter().copied().fold(0.0, f64::max)
}

/// Three spokes from an interior point `P`, pairwise 120 degrees apart, to
/// the midpoints of sides `ab` and `bc` and to a point `q` on side `ca`.
/// `phi` is the direction of the spoke to the midpoint of `ab`.
fn star(t: [Point; 3], phi: f64) -> Option<(Point, Point)> {
    let d = |k: f64| Point::from_angle(phi + k * 2.0 * PI / 3.0);
    let (m1, m2) = (t[0].mid(t[1]), t[1].mid(t[2]));
    let p = line_intersection(m1, d(0.0), m2, d(1.0))?;
    let inside = (0..3).all(|i| (t[(i + 1) % 3] - t[i]).cross(p - t[i]) > 0.0);
    if !inside || (m1 - p).dot(d(0.0)) <= 0.0 || (m2 - p).dot(d(1.0)) <= 0.0 {
        return None;
    }
    let q = line_intersection(p, d(2.0), t[2], t[0] - t[2])?;
    let s = line_param(q, t[2], t[0]);
    if !(s > 0.0 && s < 1.0) || (q - p).dot(d(2.0)) <= 0.0 {
        return None;
    }
    Some((p, q))
}

fn star_quads(t: [Point; 3], p: Point, q: Point) -> [[Point; 4]; 3] {
    let (m1, m2) = (t[0].mid(t[1]), t[1].mid(t[2]));
    [[t[0], m1, p, q], [t[1], m2, p, m1], [t[2], q, p, m2]]
}

fn star_max(t: [Point; 3], phi: f64) -> f64 {
    star(t, phi).map_or(f64::INFINITY, |(p, q)| star_quads(t, p, q).iter().map(quad_max).fold(0.0, f64::max))
}

/// Spoke direction whose third spoke meets side `ca` at a right angle.
fn perpendicular_phi(t: [Point; 3]) -> f64 {
    let w = t[0] - t[2];
    Point::new(w.y, -w.x).angle() - 4.0 * PI / 3.0
}

/// Spoke direction minimizing the largest angle: the perpendicular choice
/// when it already meets the bound, otherwise a sweep refined by ternary
/// search.
fn best_phi(t: [Point; 3]) -> (f64, f64) {
    let phi0 = perpendicular_phi(t);
    let f0 = star_max(t, phi0);
    if f0 <= LIMIT_DEG + 1e-9 {
        return (phi0, f0);
    }
    let steps = 1440;
    let h = 2.0 * PI / steps as f64;
    let (mut best, mut fb) = (phi0, f0);
    for i in 0..steps {
        let phi = phi0 + i as f64 * h;
        let f = star_max(t, phi);
        if f < fb {
            best = phi;
            fb = f;
        }
    }
    let (mut lo, mut hi) = (best - h, best + h);
    for _ in 0..60 {
        let (x1, x2) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
        if star_max(t, x1) <= star_max(t, x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = star_max(t, mid);
    if fm < fb {
        (mid, fm)
    } else {
        (best, fb)
    }
}

fn near(a: f64, b: f64, scale: f64, tol: Tolerances) -> bool {
    (a - b).abs() <= 1e3 * tol.eps_rel * scale
}

/// Apex corners `(p, q)` of a kite: the corners on its symmetry axis.
fn apexes(k: &[Point; 4], tol: Tolerances) -> Option<(usize, usize)> {
    let s: Vec<f64> = (0..4).map(|i| k[i].dist(k[(i + 1) % 4])).collect();
    let scale = s.iter().copied().fold(0.0, f64::max);
    if near(s[0], s[1], scale, tol) && near(s[2], s[3], scale, tol) {
        Some((1, 3))
    } else if near(s[1], s[2], scale, tol) && near(s[3], s[0], scale, tol) {
        Some((2, 0))
    } else {
        None
    }
}

fn angle_at(k: &[Point; 4], i: usize) -> f64 {
    quad_angles(k)[i]
}

fn reflect(p: Point, a: Point, b: Point) -> Point {
    let u = (b - a).unit();
    (a + u * u.dot(p - a)) * 2.0 - p
}

/// Split along diagonal `u`-`u+2` into two triangles of three quads each.
/// A cut across the axis uses perpendicular spokes onto the diagonal in
/// both triangles; a cut along the axis solves one triangle and mirrors it.
fn split_along(k: &[Point; 4], u: usize, case: KiteCase) -> Subdivision {
    let v = (u + 2) % 4;
    let tris = [[u, (u + 1) % 4, v], [v, (v + 1) % 4, u]];
    let tri_pts = |i: usize| tris[i].map(|j| k[j]);
    let mut points: Vec<Point> = k.to_vec();
    points.extend((0..4).map(|i| k[i].mid(k[(i + 1) % 4])));
    let (p1, p2, q) = if case == KiteCase::Sharp {
        let s1 = star(tri_pts(0), perpendicular_phi(tri_pts(0)));
        let s2 = star(tri_pts(1), perpendicular_phi(tri_pts(1)));
        match (s1, s2) {
            (Some((p1, q)), Some((p2, _))) => (p1, p2, q),
            _ => (k[u], k[v], k[u].mid(k[v])),
        }
    } else {
        let (phi, _) = best_phi(tri_pts(0));
        match star(tri_pts(0), phi) {
            Some((p1, q)) => (p1, reflect(p1, k[u], k[v]), q),
            None => (k[u], k[v], k[u].mid(k[v])),
        }
    };
    points.push(q);
    points.push(p1);
    points.push(p2);
    let (qi, pi) = (8, [9, 10]);
    let mut quads = Vec::with_capacity(6);
    for (ti, tri) in tris.iter().enumerate() {
        let (a, b, c) = (tri[0], tri[1], tri[2]);
        let (mab, mbc) = (4 + a, 4 + b);
        quads.push([a, mab, pi[ti], qi]);
        quads.push([b, mbc, pi[ti], mab]);
        quads.push([c, qi, pi[ti], mbc]);
    }
    let max_angle = quads.iter().map(|q| quad_max(&q.map(|i| points[i]))).fold(0.0, f64::max);
    Subdivision { points, quads, case, max_angle }
}

pub(crate) fn subdivide(k: &[Point; 4], tol: Tolerances) -> Result<Subdivision, MeshingError> {
    if signed_area(k) <= 0.0 {
        return Err(MeshingError::NotAKite);
    }
    let (p, q) = apexes(k, tol).ok_or(MeshingError::NotAKite)?;
    let (ap, aq) = (angle_at(k, p), angle_at(k, q));
    let mut options = Vec::new();
    if ap < LIMIT_DEG && aq < LIMIT_DEG {
        options.push(split_along(k, (p + 1) % 4, KiteCase::Sharp));
    }
    if ap > 60.0 && aq > 60.0 {
        options.push(split_along(k, p, KiteCase::Blunt));
    }
    if options.is_empty() {
        options.push(split_along(k, p, KiteCase::Mixed));
    }
    // The first option wins ties.
    let best = options.into_iter().reduce(|a, b| if b.max_angle < a.max_angle - 1e-9 { b } else { a }).unwrap();
    let bound = LIMIT_DEG + tol.eps_angle.to_degrees();
    if best.max_angle > bound {
        return Err(MeshingError::AngleTargetMissed(best.max_angle));
    }
    Ok(best)
}

/// Subdivide one kite, given counterclockwise, into six quads.
pub fn subdivide_kite_120(k: &[Point; 4], tol: Tolerances) -> Result<(Vec<[Point; 4]>, KiteCase), MeshingError> {
    let s = subdivide(k, tol)?;
    Ok((s.quads.iter().map(|q| q.map(|i| s.points[i])).collect(), s.case))
}

/// Refine every kite of a kite mesh. Neighboring kites share the midpoint of
/// their common side, so the result stays conforming.
pub fn mesh_120_from_kites(kites: &QuadMesh, poly: &Polygon, tol: Tolerances) -> Result<QuadMesh, MeshingError> {
    let mut b = MeshBuilder::new();
    for (qi, q) in kites.quads.iter().enumerate() {
        let s = subdivide(&kites.quad_points(qi), tol)?;
        let key = |i: usize| match i {
            0..=3 => VertexKey::Vertex(q[i]),
            4..=7 => VertexKey::mid(q[i - 4], q[(i - 3) % 4]),
            _ => VertexKey::Inner(qi, i),
        };
        for sq in &s.quads {
            let ids = sq.map(|i| b.vertex(key(i), s.points[i]));
            b.quad(ids);
        }
    }
    Ok(b.finish(poly))
}

/// Pack, mesh with kites and refine: a mesh with every angle at most 120
/// degrees.
pub fn mesh_120(poly: &Polygon, opts: &PackOptions) -> Result<QuadMesh, MeshingError> {
    let opts = PackOptions { mode: PackMode::BoundaryTangent, ..*opts };
    let pk = pack(poly, &opts)?;
    let km = mesh_kites_with(&pk, poly, &opts)?;
    mesh_120_from_kites(&km.mesh, poly, opts.tol)
}
