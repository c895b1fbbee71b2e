//! Circles tangent to three sites (circles, points or lines).
//!
//! Subtracting the tangency equations pairwise leaves two linear equations in
//! (x, y, radius); the remaining quadratic is solved along their null line and
//! each root is polished by Newton steps on the full residual system.

use super::{Circle, GeomError, Point};

/// A tangency constraint for [`tangent_circles`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Site {
    /// Externally tangent to this circle.
    Circle(Circle),
    /// Passing through this point.
    Point(Point),
    /// Tangent to the line through `point`, on the side `normal` points to.
    /// `normal` must be a unit vector.
    Line { point: Point, normal: Point },
}

#[derive(Clone, Copy)]
enum Raw {
    Disk(Point, f64),
    Line(Point, Point),
}

impl Raw {
    fn from(s: &Site) -> Raw {
        match *s {
            Site::Circle(c) => Raw::Disk(c.center, c.radius),
            Site::Point(p) => Raw::Disk(p, 0.0),
            Site::Line { point, normal } => Raw::Line(point, normal),
        }
    }

    fn residual(&self, x: Point, rho: f64) -> f64 {
        match *self {
            Raw::Disk(c, r) => x.dist(c) - r - rho,
            Raw::Line(p, n) => n.dot(x - p) - rho,
        }
    }

    fn gradient(&self, x: Point) -> [f64; 3] {
        match *self {
            Raw::Disk(c, _) => {
                let d = x - c;
                let l = d.norm();
                if l == 0.0 {
                    [0.0, 0.0, -1.0]
                } else {
                    [d.x / l, d.y / l, -1.0]
                }
            }
            Raw::Line(_, n) => [n.x, n.y, -1.0],
        }
    }

    fn scale(&self) -> f64 {
        match *self {
            Raw::Disk(c, r) => c.norm() + r,
            Raw::Line(p, _) => p.norm(),
        }
    }
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = dot3(m[0], cross3(m[1], m[2]));
    let norm = m.iter().map(|r| dot3(*r, *r).sqrt()).product::<f64>();
    if det.abs() <= 1e-14 * norm.max(f64::MIN_POSITIVE) {
        return None;
    }
    let col = |j: usize| [m[0][j], m[1][j], m[2][j]];
    let (c0, c1, c2) = (col(0), col(1), col(2));
    Some([
        dot3(b, cross3(c1, c2)) / det,
        dot3(c0, cross3(b, c2)) / det,
        dot3(c0, cross3(c1, b)) / det,
    ])
}

fn max_residual(raws: &[Raw; 3], x: Point, rho: f64) -> f64 {
    raws.iter().map(|r| r.residual(x, rho).abs()).fold(0.0, f64::max)
}

fn polish(raws: &[Raw; 3], mut x: Point, mut rho: f64) -> (Point, f64) {
    let mut best = max_residual(raws, x, rho);
    for _ in 0..4 {
        if best == 0.0 {
            break;
        }
        let m = [raws[0].gradient(x), raws[1].gradient(x), raws[2].gradient(x)];
        let f = [
            -raws[0].residual(x, rho),
            -raws[1].residual(x, rho),
            -raws[2].residual(x, rho),
        ];
        let Some(d) = solve3(m, f) else { break };
        let nx = Point::new(x.x + d[0], x.y + d[1]);
        let nr = rho + d[2];
        let res = max_residual(raws, nx, nr);
        if !(res < best) {
            break;
        }
        x = nx;
        rho = nr;
        best = res;
    }
    (x, rho)
}

/// All circles of positive radius tangent to the three sites, sorted by radius.
pub fn tangent_circles(sites: &[Site; 3]) -> Vec<Circle> {
    let raw = [Raw::from(&sites[0]), Raw::from(&sites[1]), Raw::from(&sites[2])];
    let mut out: Vec<(Point, f64)> = Vec::new();

    let ref_idx = raw.iter().position(|r| matches!(r, Raw::Disk(..)));
    match ref_idx {
        None => {
            let mut m = [[0.0; 3]; 3];
            let mut b = [0.0; 3];
            for (k, r) in raw.iter().enumerate() {
                if let Raw::Line(p, n) = *r {
                    m[k] = [n.x, n.y, -1.0];
                    b[k] = n.dot(p);
                }
            }
            if let Some(z) = solve3(m, b) {
                out.push((Point::new(z[0], z[1]), z[2]));
            }
        }
        Some(i0) => {
            let Raw::Disk(c0, r0) = raw[i0] else { unreachable!() };
            // Work in coordinates centered on the reference disk.
            let local: Vec<Raw> = raw
                .iter()
                .map(|r| match *r {
                    Raw::Disk(c, rr) => Raw::Disk(c - c0, rr),
                    Raw::Line(p, n) => Raw::Line(p - c0, n),
                })
                .collect();
            let mut rows: Vec<([f64; 3], f64)> = Vec::with_capacity(2);
            for (k, r) in local.iter().enumerate() {
                if k == i0 {
                    continue;
                }
                rows.push(match *r {
                    Raw::Disk(c, rr) => (
                        [2.0 * c.x, 2.0 * c.y, 2.0 * (rr - r0)],
                        c.norm2() - rr * rr + r0 * r0,
                    ),
                    Raw::Line(p, n) => ([n.x, n.y, -1.0], n.dot(p)),
                });
            }
            let (a1, b1) = rows[0];
            let (a2, b2) = rows[1];
            let v = cross3(a1, a2);
            let vv = dot3(v, v);
            let n1 = dot3(a1, a1);
            let n2 = dot3(a2, a2);
            if vv > 1e-24 * n1 * n2 {
                let m12 = dot3(a1, a2);
                let l1 = (n2 * b1 - m12 * b2) / vv;
                let l2 = (n1 * b2 - m12 * b1) / vv;
                let zp = [
                    l1 * a1[0] + l2 * a2[0],
                    l1 * a1[1] + l2 * a2[1],
                    l1 * a1[2] + l2 * a2[2],
                ];
                let u = [zp[0], zp[1], zp[2] + r0];
                let jdot = |p: [f64; 3], q: [f64; 3]| p[0] * q[0] + p[1] * q[1] - p[2] * q[2];
                let qa = jdot(v, v);
                let qb = 2.0 * jdot(u, v);
                let qc = jdot(u, u);
                let mut roots = Vec::with_capacity(2);
                let scale_a = dot3(v, v);
                if qa.abs() <= 1e-13 * scale_a {
                    if qb != 0.0 {
                        roots.push(-qc / qb);
                    }
                } else {
                    let disc = qb * qb - 4.0 * qa * qc;
                    let dtol = 1e-12 * (qb * qb + (4.0 * qa * qc).abs());
                    if disc >= -dtol {
                        let sq = disc.max(0.0).sqrt();
                        let q = -0.5 * (qb + qb.signum() * sq);
                        if q != 0.0 {
                            roots.push(q / qa);
                            roots.push(qc / q);
                        } else {
                            roots.push(0.0);
                        }
                    }
                }
                for t in roots {
                    let z = [zp[0] + t * v[0], zp[1] + t * v[1], zp[2] + t * v[2]];
                    out.push((Point::new(z[0], z[1]) + c0, z[2]));
                }
            }
        }
    }

    let scale = raw.iter().map(Raw::scale).fold(1e-300, f64::max);
    let mut res: Vec<Circle> = Vec::new();
    for (x, rho) in out {
        if !(x.is_finite() && rho.is_finite()) {
            continue;
        }
        let (x, rho) = polish(&raw, x, rho);
        if rho <= 1e-14 * scale {
            continue;
        }
        // Bound the miss by the input's size, not the candidate's: nearly straight
        // solutions carry residuals proportional to their huge radius.
        if max_residual(&raw, x, rho) > 1e-9 * scale {
            continue;
        }
        let c = Circle { center: x, radius: rho };
        let err = max_residual(&raw, x, rho);
        // Near-double roots polish to the same circle; keep the better one.
        let near = |o: &Circle| {
            o.center.dist(c.center) <= 1e-6 * scale && (o.radius - c.radius).abs() <= 1e-6 * scale
        };
        match res.iter().position(near) {
            Some(k) => {
                if err < max_residual(&raw, res[k].center, res[k].radius) {
                    res[k] = c;
                }
            }
            None => res.push(c),
        }
    }
    res.sort_by(|a, b| a.radius.total_cmp(&b.radius));
    res
}

fn inside_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s1 = (b - a).cross(p - a);
    let s2 = (c - b).cross(p - b);
    let s3 = (a - c).cross(p - c);
    (s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0) || (s1 <= 0.0 && s2 <= 0.0 && s3 <= 0.0)
}

/// Circle inscribed in the gap bounded by three disjoint circles.
pub fn apollonius_inscribed(a: &Circle, b: &Circle, c: &Circle) -> Result<Circle, GeomError> {
    let eps = 1e-9;
    for (p, q) in [(a, b), (b, c), (a, c)] {
        if p.clearance(q) < -eps * p.radius.max(q.radius) {
            return Err(GeomError::NoSolution);
        }
    }
    let sols = tangent_circles(&[Site::Circle(*a), Site::Circle(*b), Site::Circle(*c)]);
    sols.iter()
        .find(|s| inside_triangle(s.center, a.center, b.center, c.center))
        .or_else(|| sols.first())
        .copied()
        .ok_or(GeomError::NoSolution)
}

/// Smallest circle through `through` externally tangent to `a` and `b`.
pub fn tangent_circle_to_two(a: &Circle, b: &Circle, through: Point) -> Result<Circle, GeomError> {
    let eps = 1e-9;
    if through.dist(a.center) <= a.radius * (1.0 + eps) || through.dist(b.center) <= b.radius * (1.0 + eps) {
        return Err(GeomError::NoSolution);
    }
    tangent_circles(&[Site::Circle(*a), Site::Circle(*b), Site::Point(through)])
        .into_iter()
        .next()
        .ok_or(GeomError::NoSolution)
}
