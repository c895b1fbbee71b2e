//! Geometric primitives: points, circles, tangency, circumcircles and power.

mod apollonius;
mod polygon;

pub use apollonius::{apollonius_inscribed, tangent_circle_to_two, tangent_circles, Site};
pub use polygon::{EdgeRef, Normalization, Polygon};

use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points are collinear within tolerance")]
    CollinearPoints,
    #[error("circles are not tangent (gap {0:e})")]
    NotTangent(f64),
    #[error("no tangent circle exists")]
    NoSolution,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("invalid polygon: loop {loop_index}: {reason}")]
    InvalidPolygon { loop_index: usize, reason: String },
    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),
}

/// Relative geometric and angular tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_rel: f64,
    /// Radians.
    pub eps_angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_rel: 1e-9, eps_angle: 1e-6 }
    }
}

impl Tolerances {
    pub fn new(eps_rel: f64, eps_angle: f64) -> Result<Self, GeomError> {
        let t = Tolerances { eps_rel, eps_angle };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        for (name, v) in [("eps_rel", self.eps_rel), ("eps_angle", self.eps_angle)] {
            if !(v > 0.0 && v < 1e-3) {
                return Err(GeomError::InvalidTolerances(format!("{name} = {v} outside (0, 1e-3)")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn unit(self) -> Point {
        self / self.norm()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn mid(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(a: f64) -> Point {
        Point::new(a.cos(), a.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeomError> {
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidRadius(radius));
        }
        Ok(Circle { center, radius })
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::from_angle(angle) * self.radius
    }

    /// Signed gap between the two disks; zero when externally tangent.
    pub fn clearance(&self, o: &Circle) -> f64 {
        self.center.dist(o.center) - self.radius - o.radius
    }

    pub fn contains(&self, p: Point) -> bool {
        self.center.dist(p) < self.radius
    }
}

/// Circle through three points.
pub fn circumcircle(p1: Point, p2: Point, p3: Point) -> Result<Circle, GeomError> {
    let b = p2 - p1;
    let c = p3 - p1;
    let d = 2.0 * b.cross(c);
    let diag = bbox_diag(&[p1, p2, p3]);
    if d.abs() <= 2.0 * 1e-9 * diag * diag || diag == 0.0 {
        return Err(GeomError::CollinearPoints);
    }
    let b2 = b.norm2();
    let c2 = c.norm2();
    let u = Point::new(c.y * b2 - b.y * c2, b.x * c2 - c.x * b2) / d;
    let center = p1 + u;
    let radius = (u.norm() + center.dist(p2) + center.dist(p3)) / 3.0;
    Circle::new(center, radius)
}

pub(crate) fn bbox_diag(pts: &[Point]) -> f64 {
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    lo.dist(hi)
}

/// Contact point of two tangent circles, external or internal.
pub fn tangency_point(a: &Circle, b: &Circle) -> Result<Point, GeomError> {
    tangency_point_tol(a, b, Tolerances::default().eps_rel)
}

pub fn tangency_point_tol(a: &Circle, b: &Circle, eps_rel: f64) -> Result<Point, GeomError> {
    let d = a.center.dist(b.center);
    let tol = eps_rel * a.radius.max(b.radius);
    let ext = d - (a.radius + b.radius);
    if ext.abs() <= tol && d > 0.0 {
        // Weighted so the point sits at the same relative position on both radii.
        let t = a.radius / (a.radius + b.radius);
        return Ok(a.center.lerp(b.center, t));
    }
    let int = d - (a.radius - b.radius).abs();
    if int.abs() <= tol && d > 0.0 {
        let (big, small) = if a.radius >= b.radius { (a, b) } else { (b, a) };
        return Ok(big.center + (small.center - big.center).unit() * big.radius);
    }
    Err(GeomError::NotTangent(ext.abs().min(int.abs())))
}

/// Squared radius minus squared distance from the center.
pub fn power(p: Point, c: &Circle) -> f64 {
    c.radius * c.radius - p.dist(c.center).powi(2)
}

/// Signed angle from `a` to `b` in (-pi, pi].
pub fn signed_angle(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

/// Interior angle at `b` of the corner `a`-`b`-`c`, in [0, pi].
pub fn corner_angle(a: Point, b: Point, c: Point) -> f64 {
    let u = a - b;
    let v = c - b;
    u.cross(v).abs().atan2(u.dot(v))
}

/// Closest point on segment `a`-`b` to `p`, with its parameter in [0, 1].
pub fn project_on_segment(p: Point, a: Point, b: Point) -> (Point, f64) {
    let d = b - a;
    let l2 = d.norm2();
    if l2 == 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(d) / l2).clamp(0.0, 1.0);
    (a + d * t, t)
}

pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    p.dist(project_on_segment(p, a, b).0)
}

/// Unclamped projection parameter of `p` on the line through `a` and `b`.
pub fn line_param(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    (p - a).dot(d) / d.norm2()
}

/// Intersection of lines `p + s*u` and `q + t*v`.
pub fn line_intersection(p: Point, u: Point, q: Point, v: Point) -> Option<Point> {
    let den = u.cross(v);
    if den.abs() <= 1e-14 * u.norm() * v.norm() {
        return None;
    }
    let s = (q - p).cross(v) / den;
    Some(p + u * s)
}

/// Orientation-robust test for proper or touching intersection of two closed segments.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point, tol: f64) -> bool {
    let scale = bbox_diag(&[a, b, c, d]).max(f64::MIN_POSITIVE);
    let eps = tol * scale * scale;
    let o1 = (b - a).cross(c - a);
    let o2 = (b - a).cross(d - a);
    let o3 = (d - c).cross(a - c);
    let o4 = (d - c).cross(b - c);
    let sgn = |v: f64| if v > eps { 1 } else if v < -eps { -1 } else { 0 };
    let (s1, s2, s3, s4) = (sgn(o1), sgn(o2), sgn(o3), sgn(o4));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        // r collinear with p-q: check it lies within the bounding box.
        r.x >= p.x.min(q.x) - tol * scale
            && r.x <= p.x.max(q.x) + tol * scale
            && r.y >= p.y.min(q.y) - tol * scale
            && r.y <= p.y.max(q.y) + tol * scale
    };
    (s1 == 0 && on(a, b, c))
        || (s2 == 0 && on(a, b, d))
        || (s3 == 0 && on(c, d, a))
        || (s4 == 0 && on(c, d, b))
}

/// Signed area of a closed loop (positive when counterclockwise).
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}
