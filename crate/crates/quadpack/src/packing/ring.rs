//! Boundary layer ("ring") construction, vertex protection and hole bridging.
//!
//! Every edge is lined with circles before any interior simplification, so the
//! regions left for the simplifier are bounded by circle arcs only.

use super::{ContactKind, PackError, PackMode, PackOptions, Packing, Provenance};
use crate::geom::{dist_point_segment, signed_angle, Circle, EdgeRef, Point, Polygon};
use std::f64::consts::PI;

/// Local frame of one polygon vertex.
#[derive(Clone, Copy)]
struct Corner {
    v: Point,
    d_in: Point,
    d_out: Point,
    /// Interior angle in (0, 2pi).
    theta: f64,
    l_in: f64,
    l_out: f64,
}

fn corner(poly: &Polygon, ring: usize, i: usize) -> Corner {
    let lp = poly.ring(ring);
    let n = lp.len();
    let prev = lp[(i + n - 1) % n];
    let v = lp[i];
    let next = lp[(i + 1) % n];
    let d_in = (v - prev).unit();
    let d_out = (next - v).unit();
    Corner { v, d_in, d_out, theta: PI - signed_angle(d_in, d_out), l_in: v.dist(prev), l_out: v.dist(next) }
}

fn edge_in(poly: &Polygon, ring: usize, i: usize) -> EdgeRef {
    let n = poly.ring(ring).len();
    EdgeRef { ring, index: (i + n - 1) % n }
}

fn edge_out(ring: usize, i: usize) -> EdgeRef {
    EdgeRef { ring, index: i }
}

/// Distance from `p` to every edge except the listed ones.
fn clearance_excluding(poly: &Polygon, p: Point, skip: &[EdgeRef]) -> f64 {
    poly.edges()
        .into_iter()
        .filter(|(e, _, _)| !skip.contains(e))
        .map(|(_, a, b)| dist_point_segment(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Vertex circles in tangent mode: one per convex vertex, two per reflex vertex.
#[derive(Clone, Copy, Debug)]
enum VertexPlan {
    Convex { d: f64, circle: Circle },
    Reflex { d: f64, c1: Circle, c2: Circle },
}

impl VertexPlan {
    /// Circle touching the outgoing edge, and its distance from the vertex.
    fn on_out(&self) -> (Circle, f64) {
        match *self {
            VertexPlan::Convex { d, circle } => (circle, d),
            VertexPlan::Reflex { d, c2, .. } => (c2, d),
        }
    }

    /// Circle touching the incoming edge, and its distance from the vertex.
    fn on_in(&self) -> (Circle, f64) {
        match *self {
            VertexPlan::Convex { d, circle } => (circle, d),
            VertexPlan::Reflex { d, c1, .. } => (c1, d),
        }
    }
}

/// Reflex pair radius per unit touch distance: both circles tangent to their
/// edge at distance 1 from the vertex and tangent to each other.
fn reflex_ratio(c: &Corner) -> f64 {
    let n_in = c.d_in.perp();
    let n_out = c.d_out.perp();
    let a = -(c.d_in + c.d_out);
    let b = n_in - n_out;
    let qa = b.norm2() - 4.0;
    let qb = 2.0 * a.dot(b);
    let qc = a.norm2();
    if qa.abs() < 1e-15 {
        return -qc / qb;
    }
    let disc = (qb * qb - 4.0 * qa * qc).max(0.0).sqrt();
    // qa < 0 and qc > 0: exactly one positive root.
    let r1 = (-qb + disc) / (2.0 * qa);
    let r2 = (-qb - disc) / (2.0 * qa);
    r1.max(r2)
}

fn plan_vertex(c: &Corner, d: f64) -> VertexPlan {
    if c.theta < PI - 1e-9 {
        let half = 0.5 * c.theta;
        let bis = (c.d_out - c.d_in).unit();
        let center = c.v + bis * (d / half.cos());
        VertexPlan::Convex { d, circle: Circle { center, radius: d * half.tan() } }
    } else {
        let rho = d * reflex_ratio(c);
        let c1 = Circle { center: c.v - c.d_in * d + c.d_in.perp() * rho, radius: rho };
        let c2 = Circle { center: c.v + c.d_out * d + c.d_out.perp() * rho, radius: rho };
        VertexPlan::Reflex { d, c1, c2 }
    }
}

fn vertex_plan_fits(poly: &Polygon, ring: usize, i: usize, plan: &VertexPlan) -> bool {
    let skip = [edge_in(poly, ring, i), edge_out(ring, i)];
    let ok = |c: &Circle| clearance_excluding(poly, c.center, &skip) >= 1.3 * c.radius && poly.contains(c.center);
    match plan {
        VertexPlan::Convex { circle, .. } => ok(circle),
        VertexPlan::Reflex { c1, c2, .. } => ok(c1) && ok(c2),
    }
}

fn size_vertex(poly: &Polygon, ring: usize, i: usize, shrink: f64) -> VertexPlan {
    let c = corner(poly, ring, i);
    let lmin = c.l_in.min(c.l_out);
    let ratio = match plan_vertex(&c, 1.0) {
        VertexPlan::Convex { circle, .. } => circle.radius,
        VertexPlan::Reflex { c1, .. } => c1.radius,
    };
    let d_max = (0.3 * lmin).min(0.2 * lmin / ratio) * shrink;
    let fits = |d: f64| vertex_plan_fits(poly, ring, i, &plan_vertex(&c, d));
    if fits(d_max) {
        return plan_vertex(&c, d_max);
    }
    let (mut lo, mut hi) = (0.0, d_max);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    plan_vertex(&c, lo)
}

/// Equal circles of radius `s` tangent to a line, chained between two
/// tangent-to-line circles of radii `r1`, `r2` whose touch points are `span` apart.
/// Returns `s` and the touch offsets of the chain circles from the first touch point.
fn chain(r1: f64, r2: f64, span: f64, k: usize) -> Option<(f64, Vec<f64>)> {
    let q = r1.sqrt() + r2.sqrt();
    let u = if k == 1 {
        span / (2.0 * q)
    } else {
        let a = 2.0 * (k as f64 - 1.0);
        (-2.0 * q + (4.0 * q * q + 4.0 * a * span).sqrt()) / (2.0 * a)
    };
    let s = u * u;
    if !(s > 0.0) {
        return None;
    }
    let mut t = 2.0 * (r1 * s).sqrt();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(t);
        t += 2.0 * s;
    }
    Some((s, out))
}

/// Pairwise disjointness of all circles except recorded tangent pairs.
fn check_disjoint(pk: &Packing, margin: f64) -> Result<(), PackError> {
    let n = pk.circles.len();
    let tangent: std::collections::HashSet<(usize, usize)> = pk.tangencies.iter().map(|t| (t.a, t.b)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if tangent.contains(&(i, j)) {
                continue;
            }
            let (a, b) = (pk.circles[i].circle, pk.circles[j].circle);
            if a.clearance(&b) < margin * a.radius.min(b.radius) {
                return Err(PackError::RingConflict(format!("circles {i} and {j} collide")));
            }
        }
    }
    Ok(())
}

/// Boundary layer for the tangent mode.
pub(super) fn tangent_ring(poly: &Polygon, shrink: f64, opts: &PackOptions) -> Result<Packing, PackError> {
    let eps = opts.tol.eps_rel;
    let mut pk = Packing::empty(poly, PackMode::BoundaryTangent);
    for ring in 0..poly.loops().len() {
        let n = poly.ring(ring).len();
        let plans: Vec<VertexPlan> = (0..n).map(|i| size_vertex(poly, ring, i, shrink)).collect();
        // Circle ids of each vertex: (touching incoming edge, touching outgoing edge).
        let mut ids = Vec::with_capacity(n);
        for (i, p) in plans.iter().enumerate() {
            match *p {
                VertexPlan::Convex { circle, .. } => {
                    let id = pk.add(circle, Provenance::VertexProtection);
                    pk.contact(id, edge_in(poly, ring, i), ContactKind::TangentTo);
                    pk.contact(id, edge_out(ring, i), ContactKind::TangentTo);
                    ids.push((id, id));
                }
                VertexPlan::Reflex { c1, c2, .. } => {
                    let a = pk.add(c1, Provenance::VertexProtection);
                    let b = pk.add(c2, Provenance::VertexProtection);
                    pk.contact(a, edge_in(poly, ring, i), ContactKind::TangentTo);
                    pk.contact(b, edge_out(ring, i), ContactKind::TangentTo);
                    pk.touch(a, b, eps)?;
                    ids.push((a, b));
                }
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let e = edge_out(ring, i);
            let (a, b) = poly.edge(e);
            let len = a.dist(b);
            let dir = (b - a) / len;
            let nrm = dir.perp();
            let (c1, d1) = plans[i].on_out();
            let (c2, d2) = plans[j].on_in();
            let span = len - d1 - d2;
            if span <= 2.0 * (c1.radius * c2.radius).sqrt() {
                return Err(PackError::RingConflict(format!("vertex circles collide on edge {e:?}")));
            }
            let mut placed = None;
            for k in 1..=4000 {
                let Some((s, offs)) = chain(c1.radius, c2.radius, span, k) else { continue };
                let circles: Vec<Circle> = offs
                    .iter()
                    .map(|&t| Circle { center: a + dir * (d1 + t) + nrm * s, radius: s })
                    .collect();
                // Chains on facing edges stay apart when each keeps 3.2 radii of
                // room. Across a wide corner the separation margin is enough; a
                // sharp corner is shared between its two chains.
                let near = [(poly.prev_edge(e), i), (poly.next_edge(e), j)];
                let existing = pk.geometry();
                let clear = circles.iter().enumerate().all(|(m, c)| {
                    let mut skip = vec![e];
                    skip.extend(near.iter().map(|n| n.0));
                    if clearance_excluding(poly, c.center, &skip) < 3.2 * s {
                        return false;
                    }
                    let adj_ok = near.iter().all(|&(n, at)| {
                        let (p, q) = poly.edge(n);
                        let f = if poly.interior_angle(ring, at) < 0.6 * PI { 2.2 } else { 1.0 + 2.0 * opts.eps_sep };
                        dist_point_segment(c.center, p, q) >= f * s
                    });
                    let ends = [(0, ids[i].1), (circles.len() - 1, ids[j].0)];
                    adj_ok
                        && existing.iter().enumerate().all(|(id, o)| {
                            let margin = if ends.contains(&(m, id)) { -1e-9 } else { 0.05 };
                            c.clearance(o) >= margin * c.radius.min(o.radius)
                        })
                });
                if clear && s <= shrink * len {
                    placed = Some(circles);
                    break;
                }
            }
            let circles = placed.ok_or_else(|| PackError::RingConflict(format!("edge {e:?} cannot be lined")))?;
            let mut prev = ids[i].1;
            for c in circles {
                let id = pk.add(c, Provenance::Simplifier);
                pk.contact(id, e, ContactKind::TangentTo);
                pk.touch(prev, id, eps).map_err(|_| PackError::RingConflict("chain not tangent".into()))?;
                prev = id;
            }
            pk.touch(prev, ids[j].0, eps).map_err(|_| PackError::RingConflict("chain not tangent".into()))?;
        }
    }
    if pk.circles.len() > opts.cap(poly) {
        return Err(PackError::Overflow(opts.cap(poly)));
    }
    check_disjoint(&pk, 0.02)?;
    Ok(pk)
}

/// Protection radius per vertex in centered mode: half the smallest vertex
/// distance, clipped by half the distance to every non-incident edge.
fn centered_radii(poly: &Polygon) -> Vec<Vec<f64>> {
    let all: Vec<Point> = poly.loops().iter().flat_map(|l| l.iter().copied()).collect();
    let mut dmin = f64::INFINITY;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            dmin = dmin.min(all[i].dist(all[j]));
        }
    }
    let base = 0.5 * dmin;
    (0..poly.loops().len())
        .map(|ring| {
            let n = poly.ring(ring).len();
            (0..n)
                .map(|i| {
                    let v = poly.ring(ring)[i];
                    let clip = clearance_excluding(poly, v, &[edge_in(poly, ring, i), edge_out(ring, i)]);
                    base.min(0.5 * clip)
                })
                .collect()
        })
        .collect()
}

/// Protection circles for every vertex (centered mode) or the vertex circles
/// of the tangent boundary layer (tangent mode).
pub fn protect_vertices(poly: &Polygon, opts: &PackOptions) -> Vec<Circle> {
    match opts.mode {
        PackMode::BoundaryCentered => {
            let radii = centered_radii(poly);
            let mut out = Vec::new();
            for (ring, rs) in radii.iter().enumerate() {
                for (i, r) in rs.iter().enumerate() {
                    out.push(Circle { center: poly.ring(ring)[i], radius: *r });
                }
            }
            out
        }
        PackMode::BoundaryTangent => {
            let mut out = Vec::new();
            for ring in 0..poly.loops().len() {
                for i in 0..poly.ring(ring).len() {
                    match size_vertex(poly, ring, i, 1.0) {
                        VertexPlan::Convex { circle, .. } => out.push(circle),
                        VertexPlan::Reflex { c1, c2, .. } => {
                            out.push(c1);
                            out.push(c2);
                        }
                    }
                }
            }
            out
        }
    }
}

/// Circle of radius `x` above the edge, tangent to two boundary-centered
/// circles whose centers are `span` apart. Returns (offset along edge, height).
fn bridge_position(ru: f64, rw: f64, span: f64, x: f64) -> Option<(f64, f64)> {
    let a = ru + x;
    let b = rw + x;
    let t = (span * span + a * a - b * b) / (2.0 * span);
    let y2 = a * a - t * t;
    (y2 > 0.0).then(|| (t, y2.sqrt()))
}

/// Smallest bridge radius whose circle clears the edge by a quarter radius.
fn bridge_radius(ru: f64, rw: f64, span: f64) -> Option<f64> {
    let gap = span - ru - rw;
    let f = |x: f64| bridge_position(ru, rw, span, x).map(|(_, y)| y - 1.25 * x).unwrap_or(-1.0);
    let mut lo = 0.5 * gap;
    let top = 4.0 * ru.max(rw);
    let mut x = lo * 1.0001;
    while x < top {
        if f(x) >= 0.0 {
            let mut hi = x;
            for _ in 0..80 {
                let m = 0.5 * (lo + hi);
                if f(m) >= 0.0 {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            return Some(hi * 1.05).filter(|&r| f(r) > 0.0).or(Some(hi));
        }
        lo = x;
        x *= 1.02;
    }
    None
}

/// Boundary layer for the centered mode.
/// Bridges between consecutive circles centered on edge `e`: the two vertex
/// circles `ends` (offset, radius, id) and lining circles of radius `s` at
/// `offs`. Fails when a bridge comes too close to the boundary or when any
/// new circle runs into one of `existing` other than the two vertex circles.
fn edge_layout(
    poly: &Polygon,
    e: EdgeRef,
    ends: ((f64, f64, usize), (f64, f64, usize)),
    offs: &[f64],
    s: f64,
    existing: &[Circle],
) -> Result<Vec<Circle>, PackError> {
    let (a, b) = poly.edge(e);
    let dir = (b - a) / a.dist(b);
    let mut line = vec![(ends.0 .0, ends.0 .1)];
    line.extend(offs.iter().map(|&t| (t, s)));
    line.push((ends.1 .0, ends.1 .1));
    let mut bridges = Vec::with_capacity(line.len() - 1);
    for w in line.windows(2) {
        let ((tu, ru), (tw, rw)) = (w[0], w[1]);
        let span = tw - tu;
        let x = bridge_radius(ru, rw, span).ok_or_else(|| PackError::RingConflict(format!("no bridge fits on edge {e:?}")))?;
        let (t, y) = bridge_position(ru, rw, span, x).expect("bridge position");
        let c = Circle::new(a + dir * (tu + t) + dir.perp() * y, x)?;
        if clearance_excluding(poly, c.center, &[]) < 1.05 * x {
            return Err(PackError::RingConflict(format!("bridge on edge {e:?} too close to boundary")));
        }
        bridges.push(c);
    }
    let lining = offs.iter().map(|&t| Circle { center: a + dir * t, radius: s });
    let own = [ends.0 .2, ends.1 .2];
    for c in lining.chain(bridges.iter().copied()) {
        let hit = existing.iter().enumerate().any(|(id, o)| !own.contains(&id) && c.clearance(o) < 0.02 * c.radius.min(o.radius));
        if hit {
            return Err(PackError::RingConflict(format!("lining of edge {e:?} meets an earlier circle")));
        }
    }
    Ok(bridges)
}

pub(super) fn centered_ring(poly: &Polygon, shrink: f64, opts: &PackOptions) -> Result<Packing, PackError> {
    let eps = opts.tol.eps_rel;
    let radii: Vec<Vec<f64>> = centered_radii(poly)
        .into_iter()
        .map(|r| r.into_iter().map(|x| 0.5 * shrink * x).collect())
        .collect();
    let mut pk = Packing::empty(poly, PackMode::BoundaryCentered);
    for (ring, radii) in radii.iter().enumerate() {
        let lp = poly.ring(ring).to_vec();
        let n = lp.len();
        let mut vid = Vec::with_capacity(n);
        for i in 0..n {
            let id = pk.add(Circle::new(lp[i], radii[i])?, Provenance::VertexProtection);
            pk.contact(id, edge_in(poly, ring, i), ContactKind::CenteredOn);
            pk.contact(id, edge_out(ring, i), ContactKind::CenteredOn);
            vid.push(id);
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let e = edge_out(ring, i);
            let (a, b) = poly.edge(e);
            let len = a.dist(b);
            let dir = (b - a) / len;
            let (r1, r2) = (radii[i], radii[j]);
            let free = len - r1 - r2;
            if free <= 0.0 {
                return Err(PackError::RingConflict(format!("vertex circles overlap on edge {e:?}")));
            }
            let ends = ((0.0, r1, vid[i]), (len, r2, vid[j]));
            let existing = pk.geometry();
            let layout = |offs: &[f64], s: f64| edge_layout(poly, e, ends, offs, s, &existing);
            let (line, bridges) = if free > 0.3 * r1.min(r2) {
                let mut chosen = None;
                for k in 1..=4000usize {
                    let kf = k as f64;
                    let s = free / (0.3 * (kf + 1.0) + 2.0 * kf);
                    let g = 0.3 * s;
                    let offs: Vec<f64> = (0..k).map(|m| r1 + g + s + (m as f64) * (2.0 * s + g)).collect();
                    let clear = offs
                        .iter()
                        .all(|&t| clearance_excluding(poly, a + dir * t, &[e]) >= 1.6 * s);
                    if s <= r1.min(r2) && clear {
                        // A lining that would run into circles of an earlier
                        // edge (across a sharp corner) is made finer instead.
                        if let Ok(l) = layout(&offs, s) {
                            chosen = Some((offs, s, l));
                            break;
                        }
                    }
                }
                let (offs, s, l) = chosen.ok_or_else(|| PackError::RingConflict(format!("edge {e:?} cannot be lined")))?;
                (offs.into_iter().map(|t| (t, s)).collect::<Vec<_>>(), l)
            } else {
                (Vec::new(), layout(&[], 0.0)?)
            };
            let mut ids = vec![vid[i]];
            for (t, s) in line {
                let id = pk.add(Circle::new(a + dir * t, s)?, Provenance::Simplifier);
                pk.contact(id, e, ContactKind::CenteredOn);
                ids.push(id);
            }
            ids.push(vid[j]);
            for (k, c) in bridges.into_iter().enumerate() {
                let id = pk.add(c, Provenance::Simplifier);
                pk.touch(ids[k], id, eps).map_err(|_| PackError::RingConflict("bridge not tangent".into()))?;
                pk.touch(ids[k + 1], id, eps).map_err(|_| PackError::RingConflict("bridge not tangent".into()))?;
            }
        }
    }
    if pk.circles.len() > opts.cap(poly) {
        return Err(PackError::Overflow(opts.cap(poly)));
    }
    check_disjoint(&pk, 0.02)?;
    Ok(pk)
}

/// Union-find over loop and circle nodes.
struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn new(n: usize) -> Self {
        Components { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A feature a bridge circle can touch.
#[derive(Clone, Copy)]
enum Feature {
    Circle(usize, Circle),
    Edge(usize, Point, Point),
}

fn closest_points(f: &Feature, g: &Feature) -> (Point, Point) {
    match (*f, *g) {
        (Feature::Circle(_, a), Feature::Circle(_, b)) => {
            let u = (b.center - a.center).unit();
            (a.center + u * a.radius, b.center - u * b.radius)
        }
        (Feature::Circle(_, c), Feature::Edge(_, p, q)) => {
            let foot = crate::geom::project_on_segment(c.center, p, q).0;
            (c.center + (foot - c.center).unit() * c.radius, foot)
        }
        (Feature::Edge(..), Feature::Circle(..)) => {
            let (x, y) = closest_points(g, f);
            (y, x)
        }
        (Feature::Edge(_, a, b), Feature::Edge(_, c, d)) => {
            let mut pairs = Vec::with_capacity(4);
            for (p, s, t) in [(a, c, d), (b, c, d)] {
                pairs.push((p, crate::geom::project_on_segment(p, s, t).0));
            }
            for (p, s, t) in [(c, a, b), (d, a, b)] {
                pairs.push((crate::geom::project_on_segment(p, s, t).0, p));
            }
            let best = pairs.iter().map(|(p, q)| p.dist(*q)).fold(f64::INFINITY, f64::min);
            // Parallel overlapping edges: use the middle of the overlap.
            let close: Vec<&(Point, Point)> =
                pairs.iter().filter(|(p, q)| p.dist(*q) <= best * (1.0 + 1e-9) + 1e-15).collect();
            let m = close.len() as f64;
            let p = close.iter().fold(Point::new(0.0, 0.0), |acc, (p, _)| acc + *p) / m;
            let q = close.iter().fold(Point::new(0.0, 0.0), |acc, (_, q)| acc + *q) / m;
            (p, q)
        }
    }
}

/// Greedy bridges: repeatedly place the smallest circle spanning the
/// narrowest clearance between two components until every loop is joined.
fn plan_bridges(poly: &Polygon, existing: &[Circle], loop_of: &[Option<usize>]) -> Result<Vec<(Circle, Feature, Feature)>, PackError> {
    let loops = poly.loops().len();
    if loops == 1 {
        return Ok(Vec::new());
    }
    let mut comps = Components::new(loops + existing.len());
    for (i, l) in loop_of.iter().enumerate() {
        if let Some(l) = l {
            comps.union(*l, loops + i);
        }
    }
    let features: Vec<Feature> = if existing.is_empty() {
        poly.edges()
            .into_iter()
            .map(|(e, a, b)| Feature::Edge(e.ring, a, b))
            .collect()
    } else {
        existing.iter().enumerate().map(|(i, c)| Feature::Circle(i, *c)).collect()
    };
    let node = |f: &Feature| match f {
        Feature::Circle(i, _) => loops + i,
        Feature::Edge(r, _, _) => *r,
    };
    let mut placed: Vec<Circle> = Vec::new();
    let mut out = Vec::new();
    loop {
        let roots: std::collections::BTreeSet<usize> = (0..loops).map(|l| comps.find(l)).collect();
        if roots.len() == 1 {
            return Ok(out);
        }
        let mut cands: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..features.len() {
            for j in i + 1..features.len() {
                if comps.find(node(&features[i])) == comps.find(node(&features[j])) {
                    continue;
                }
                let (p, q) = closest_points(&features[i], &features[j]);
                cands.push((p.dist(q), i, j));
            }
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut done = false;
        for (d, i, j) in cands {
            let (p, q) = closest_points(&features[i], &features[j]);
            let r = 0.5 * d;
            if r <= 0.0 {
                continue;
            }
            let c = Circle { center: p.mid(q), radius: r };
            let tol = 1e-9 * r;
            let skip_edge = |f: &Feature, a: Point, b: Point| matches!(f, Feature::Edge(_, x, y) if *x == a && *y == b);
            let edges_ok = poly.edges().into_iter().all(|(_, a, b)| {
                skip_edge(&features[i], a, b) || skip_edge(&features[j], a, b) || dist_point_segment(c.center, a, b) > r + tol
            });
            let circles_ok = existing
                .iter()
                .chain(placed.iter())
                .enumerate()
                .all(|(k, o)| {
                    let touching = matches!(features[i], Feature::Circle(x, _) if x == k)
                        || matches!(features[j], Feature::Circle(x, _) if x == k);
                    touching || c.clearance(o) > tol
                });
            if edges_ok && circles_ok && poly.contains(c.center) {
                comps.union(node(&features[i]), node(&features[j]));
                placed.push(c);
                out.push((c, features[i], features[j]));
                done = true;
                break;
            }
        }
        if !done {
            return Err(PackError::HoleConnection("no empty bridge between components".into()));
        }
    }
}

/// Circles that connect every hole to the outer boundary, given circles
/// already placed (each assigned to the loop it touches, if any).
pub fn connect_holes(poly: &Polygon, existing: &[Circle]) -> Result<Vec<Circle>, PackError> {
    let loop_of: Vec<Option<usize>> = existing
        .iter()
        .map(|c| {
            poly.edges()
                .into_iter()
                .find(|(_, a, b)| dist_point_segment(c.center, *a, *b) <= c.radius * (1.0 + 1e-9))
                .map(|(e, _, _)| e.ring)
        })
        .collect();
    Ok(plan_bridges(poly, existing, &loop_of)?.into_iter().map(|(c, _, _)| c).collect())
}

/// Ring circles belong to the loop they were built for; connect the rings.
pub(super) fn bridge_holes(pk: &mut Packing, opts: &PackOptions) -> Result<(), PackError> {
    let poly = pk.domain.clone();
    if poly.hole_count() == 0 {
        return Ok(());
    }
    let mut loop_of = vec![None; pk.circles.len()];
    for c in &pk.boundary_contacts {
        loop_of[c.circle] = Some(c.edge.ring);
    }
    // Bridges (no contact) inherit the loop of a tangent neighbour.
    for _ in 0..2 {
        for t in &pk.tangencies {
            if loop_of[t.a].is_none() {
                loop_of[t.a] = loop_of[t.b];
            }
            if loop_of[t.b].is_none() {
                loop_of[t.b] = loop_of[t.a];
            }
        }
    }
    let geo = pk.geometry();
    for (c, f, g) in plan_bridges(&poly, &geo, &loop_of)? {
        let id = pk.add(c, Provenance::HoleConnector);
        for feat in [f, g] {
            if let Feature::Circle(k, _) = feat {
                pk.touch(id, k, opts.tol.eps_rel)
                    .map_err(|e| PackError::HoleConnection(format!("bridge not tangent: {e}")))?;
            }
        }
    }
    Ok(())
}

/// Replacement family for a circle tangent to the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct InsetFamily {
    /// Radius eps, centered at the boundary contact.
    pub dot: Circle,
    /// Radius eps/2, inside `c` and tangent to it at each other tangency.
    pub small: Vec<Circle>,
    /// Concentric with `c`, radius reduced by eps.
    pub inner: Circle,
}

impl InsetFamily {
    pub fn circles(&self) -> Vec<Circle> {
        std::iter::once(self.dot).chain(self.small.iter().copied()).chain(std::iter::once(self.inner)).collect()
    }
}

/// Replace a boundary-tangent circle by circles that meet the boundary only
/// with a center on it.
pub fn replace_boundary_tangent(c: &Circle, contact: Point, tangencies: &[Point], opts: &PackOptions) -> InsetFamily {
    let eps = opts.eps_inset * c.radius;
    let small = tangencies
        .iter()
        .map(|t| Circle { center: c.center + (*t - c.center).unit() * (c.radius - 0.5 * eps), radius: 0.5 * eps })
        .collect();
    InsetFamily {
        dot: Circle { center: contact, radius: eps },
        small,
        inner: Circle { center: c.center, radius: c.radius - eps },
    }
}
