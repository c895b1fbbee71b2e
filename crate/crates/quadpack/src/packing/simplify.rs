//! Region simplification.
//!
//! A region bounded by circle arcs has a Voronoi tree whose leaves are the
//! tangencies between consecutive arcs. Placing the empty circle at a vertex
//! that balances the leaf count splits the region into parts with fewer
//! sides; recursion stops at four.

use super::gap::arc_contains;
use super::{PackError, PackMode, PackOptions, Packing, Provenance, SideRef};
use crate::geom::{dist_point_segment, tangent_circles, Circle, Point, Polygon, Site};
use serde::{Deserialize, Serialize};

/// One side of a region: the clockwise arc of `circle` from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionArc {
    pub site: usize,
    pub circle: Circle,
    pub start: Point,
    pub end: Point,
}

/// A circle added by the simplifier with the sites it touches.
///
/// New circles receive consecutive site ids after the largest input id, so a
/// later circle may list an earlier one among its touches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedCircle {
    pub circle: Circle,
    pub touches: Vec<(usize, Point)>,
}

#[derive(Clone, Copy, Debug)]
struct Vertex {
    circle: Circle,
    occ: [usize; 3],
}

/// Brute-force vertex search is attempted up to this many sides.
const BRUTE_FORCE_LIMIT: usize = 80;
/// Relative tolerance for emptiness and for recording extra touches.
const TOUCH_TOL: f64 = 1e-9;

struct Ctx<'a> {
    opts: &'a PackOptions,
    domain: Option<&'a Polygon>,
    obstacles: Vec<Circle>,
    next_site: usize,
    cap: usize,
    cap_report: usize,
    placed: Vec<PlacedCircle>,
}

impl Ctx<'_> {
    fn touch_point(arc: &RegionArc, c: &Circle) -> Point {
        arc.circle.center + (c.center - arc.circle.center).unit() * arc.circle.radius
    }

    fn on_arc(&self, arc: &RegionArc, c: &Circle) -> bool {
        arc_contains(&arc.circle, arc.start, arc.end, Self::touch_point(arc, c), self.opts.tol.eps_rel)
    }

    fn admissible(&self, c: &Circle) -> bool {
        if !(c.radius > 0.0) || !c.center.is_finite() {
            return false;
        }
        let empty = self
            .obstacles
            .iter()
            .all(|o| c.clearance(o) >= -TOUCH_TOL * c.radius.max(o.radius));
        if !empty {
            return false;
        }
        let Some(poly) = self.domain else { return true };
        if !poly.contains(c.center) {
            return false;
        }
        let need = match self.opts.mode {
            PackMode::BoundaryTangent => self.opts.eps_sep * c.radius,
            PackMode::BoundaryCentered => 0.0,
        };
        poly.edges()
            .into_iter()
            .all(|(_, a, b)| dist_point_segment(c.center, a, b) - c.radius >= need * (1.0 - 1e-9) && need >= 0.0)
    }

    /// Empty circle tangent to three arc occurrences with distinct circles.
    fn solve(&self, r: &[RegionArc], a: usize, b: usize, c: usize) -> Option<Circle> {
        let (x, y, z) = (&r[a], &r[b], &r[c]);
        if x.site == y.site || y.site == z.site || x.site == z.site {
            return None;
        }
        tangent_circles(&[Site::Circle(x.circle), Site::Circle(y.circle), Site::Circle(z.circle)])
            .into_iter()
            .find(|s| self.on_arc(x, s) && self.on_arc(y, s) && self.on_arc(z, s) && self.admissible(s))
    }

    /// Voronoi vertices reachable from the root tangency by splitting off apexes.
    fn tree(&self, r: &[RegionArc]) -> Vec<Vertex> {
        let k = r.len();
        let mut out = Vec::new();
        let mut stack = vec![(0, k - 1)];
        while let Some((a, b)) = stack.pop() {
            if b - a < 2 {
                continue;
            }
            if let Some((j, circle)) = (a + 1..b).find_map(|j| self.solve(r, a, j, b).map(|c| (j, c))) {
                out.push(Vertex { circle, occ: [a, j, b] });
                stack.push((a, j));
                stack.push((j, b));
            }
        }
        out
    }

    fn brute_force(&self, r: &[RegionArc]) -> Vec<Vertex> {
        let k = r.len();
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    if let Some(circle) = self.solve(r, a, b, c) {
                        out.push(Vertex { circle, occ: [a, b, c] });
                    }
                }
            }
        }
        out
    }

    /// Largest leaf count left on one side of the vertex.
    fn imbalance(k: usize, v: &Vertex) -> usize {
        let [a, b, c] = v.occ;
        (b - a).max(c - b).max(k - (c - a))
    }

    fn balanced(k: usize, vs: &[Vertex]) -> Option<Vertex> {
        vs.iter()
            .filter(|v| Self::imbalance(k, v) + 3 <= k)
            .min_by(|p, q| {
                Self::imbalance(k, p)
                    .cmp(&Self::imbalance(k, q))
                    .then(q.circle.radius.total_cmp(&p.circle.radius))
            })
            .copied()
    }

    fn pick(&self, r: &[RegionArc]) -> Result<Vertex, PackError> {
        let k = r.len();
        if let Some(v) = Self::balanced(k, &self.tree(r)) {
            return Ok(v);
        }
        if k <= BRUTE_FORCE_LIMIT {
            if let Some(v) = Self::balanced(k, &self.brute_force(r)) {
                return Ok(v);
            }
        }
        Err(PackError::Simplify(format!("no splitting circle found in a region with {k} sides")))
    }

    fn run(&mut self, region: Vec<RegionArc>) -> Result<(), PackError> {
        let mut stack = vec![region];
        while let Some(r) = stack.pop() {
            if r.len() <= 4 {
                continue;
            }
            let v = self.pick(&r)?;
            if self.placed.len() >= self.cap {
                return Err(PackError::Overflow(self.cap_report));
            }
            let n = v.circle;
            // Every occurrence the circle touches, in region order.
            let touched: Vec<usize> = (0..r.len())
                .filter(|&o| {
                    v.occ.contains(&o) || {
                        let a = &r[o];
                        let gap = n.center.dist(a.circle.center) - n.radius - a.circle.radius;
                        gap.abs() <= TOUCH_TOL * n.radius.max(a.circle.radius) && self.on_arc(a, &n)
                    }
                })
                .collect();
            let points: Vec<Point> = touched.iter().map(|&o| Self::touch_point(&r[o], &n)).collect();
            let site = self.next_site;
            self.next_site += 1;
            self.obstacles.push(n);
            let mut touches: Vec<(usize, Point)> = Vec::new();
            for (&o, &p) in touched.iter().zip(&points) {
                if !touches.iter().any(|t| t.0 == r[o].site) {
                    touches.push((r[o].site, p));
                }
            }
            self.placed.push(PlacedCircle { circle: n, touches });
            let m = touched.len();
            for i in 0..m {
                let (oa, ob) = (touched[i], touched[(i + 1) % m]);
                let (pa, pb) = (points[i], points[(i + 1) % m]);
                let mut sub = vec![RegionArc { start: pa, ..r[oa] }];
                let mut o = (oa + 1) % r.len();
                while o != ob {
                    sub.push(r[o]);
                    o = (o + 1) % r.len();
                }
                sub.push(RegionArc { end: pb, ..r[ob] });
                sub.push(RegionArc { site, circle: n, start: pb, end: pa });
                stack.push(sub);
            }
        }
        Ok(())
    }
}

/// Circles that reduce a region bounded by circle arcs to gaps of at most
/// four sides. The arcs must be listed in walking order (region on the left).
pub fn simplify_region(region: &[RegionArc], opts: &PackOptions) -> Result<Vec<PlacedCircle>, PackError> {
    let cap = opts.max_circles.unwrap_or(100 * region.len().max(1));
    let mut ctx = Ctx {
        opts,
        domain: None,
        obstacles: region.iter().map(|a| a.circle).collect(),
        next_site: region.iter().map(|a| a.site + 1).max().unwrap_or(0),
        cap,
        cap_report: cap,
        placed: Vec::new(),
    };
    ctx.run(region.to_vec())?;
    Ok(ctx.placed)
}

/// Simplify every face of the packing with more than four sides.
pub(super) fn simplify_packing(pk: &mut Packing, opts: &PackOptions) -> Result<(), PackError> {
    let geo = pk.geometry();
    let total_cap = opts.cap(&pk.domain);
    let placed = {
        let mut ctx = Ctx {
            opts,
            domain: Some(&pk.domain),
            obstacles: geo.clone(),
            next_site: geo.len(),
            cap: total_cap.saturating_sub(geo.len()),
            cap_report: total_cap,
            placed: Vec::new(),
        };
        for face in pk.faces() {
            if face.len() <= 4 {
                continue;
            }
            let arcs: Option<Vec<RegionArc>> = face
                .iter()
                .map(|s| match s.object {
                    SideRef::Circle(i) => Some(RegionArc { site: i, circle: geo[i], start: s.start, end: s.end }),
                    SideRef::Edge(_) => None,
                })
                .collect();
            let arcs = arcs.ok_or_else(|| {
                PackError::Simplify(format!("a region with {} sides meets the boundary", face.len()))
            })?;
            ctx.run(arcs)?;
        }
        ctx.placed
    };
    for p in placed {
        let id = pk.add(p.circle, Provenance::Simplifier);
        for (site, _) in p.touches {
            pk.touch(id, site, TOUCH_TOL.max(opts.tol.eps_rel))
                .map_err(|e| PackError::Simplify(format!("placed circle not tangent: {e}")))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::{Gap, GapSide, SideGeom};
    use crate::geom::Tolerances;

    fn circ(x: f64, y: f64, r: f64) -> Circle {
        Circle::new(Point::new(x, y), r).unwrap()
    }

    /// Closed ring of tangent circles with the given radii, centers on a common
    /// circle, walked so the inner region lies on the left.
    fn ring_with(radii: &[f64]) -> Vec<RegionArc> {
        use std::f64::consts::TAU;
        let k = radii.len();
        let turn = |big: f64| -> f64 {
            (0..k).map(|i| 2.0 * ((radii[i] + radii[(i + 1) % k]) / (2.0 * big)).asin()).sum()
        };
        let max_chord = (0..k).map(|i| radii[i] + radii[(i + 1) % k]).fold(0.0, f64::max);
        let (mut lo, mut hi) = (0.5 * max_chord, 100.0 * max_chord * k as f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if turn(mid) > TAU {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let big = 0.5 * (lo + hi);
        let mut t: f64 = 0.0;
        let mut cs = Vec::with_capacity(k);
        for i in 0..k {
            cs.push(circ(big * t.cos(), big * t.sin(), radii[i]));
            t += 2.0 * ((radii[i] + radii[(i + 1) % k]) / (2.0 * big)).asin();
        }
        (0..k)
            .map(|i| {
                let prev = cs[(i + k - 1) % k];
                let next = cs[(i + 1) % k];
                RegionArc {
                    site: i,
                    circle: cs[i],
                    start: crate::geom::tangency_point_tol(&prev, &cs[i], 1e-9).unwrap(),
                    end: crate::geom::tangency_point_tol(&cs[i], &next, 1e-9).unwrap(),
                }
            })
            .collect()
    }

    fn ring(k: usize) -> Vec<RegionArc> {
        ring_with(&vec![0.3; k])
    }

    /// Deterministic uneven radii.
    fn uneven(k: usize) -> Vec<RegionArc> {
        let radii: Vec<f64> = (0..k).map(|i| 0.2 + 0.15 * ((i * 7 % 5) as f64) + 0.01 * i as f64).collect();
        ring_with(&radii)
    }

    fn opts() -> PackOptions {
        PackOptions::new(PackMode::BoundaryTangent)
    }

    #[test]
    fn three_sided_region_needs_nothing() {
        assert!(simplify_region(&ring(3), &opts()).unwrap().is_empty());
    }

    #[test]
    fn four_sided_region_needs_nothing() {
        assert!(simplify_region(&ring(4), &opts()).unwrap().is_empty());
    }

    /// Oracle: every circle tangent to every listed site, no overlaps anywhere.
    fn check(region: &[RegionArc], placed: &[PlacedCircle]) {
        let mut all: Vec<Circle> = region.iter().map(|a| a.circle).collect();
        all.extend(placed.iter().map(|p| p.circle));
        let base = region.len();
        for (i, p) in placed.iter().enumerate() {
            assert!(p.touches.len() >= 3);
            for &(s, _) in &p.touches {
                let o = if s < base { region[s].circle } else { placed[s - base].circle };
                assert!(p.circle.clearance(&o).abs() < 1e-9, "circle {i} not tangent to site {s}");
            }
        }
        for i in 0..all.len() {
            for j in 0..i {
                assert!(all[i].clearance(&all[j]) > -1e-9);
            }
        }
    }

    /// Oracle: gap side counts from the tangency graph, walked around each new circle.
    fn residual_sides(region: &[RegionArc], placed: &[PlacedCircle]) -> usize {
        // Euler: every placed circle of degree d turns one region into d regions.
        // Total sides = sum over regions; each must be at most four.
        let mut sides = region.len();
        let mut regions = 1;
        for p in placed {
            sides += 2 * p.touches.len();
            regions += p.touches.len() - 1;
        }
        sides.div_ceil(regions)
    }

    #[test]
    fn symmetric_ring_has_one_vertex_touching_all() {
        let r = ring(9);
        let placed = simplify_region(&r, &opts()).unwrap();
        assert_eq!(placed.len(), 1);
        assert_eq!(placed[0].touches.len(), 9);
    }

    #[test]
    fn five_circles_get_a_splitter() {
        let r = uneven(5);
        let placed = simplify_region(&r, &opts()).unwrap();
        assert!(!placed.is_empty());
        check(&r, &placed);
        assert!(residual_sides(&r, &placed) <= 4);
    }

    #[test]
    fn larger_rings_reduce_to_small_gaps() {
        for k in [6, 7, 9, 12, 20, 40] {
            let r = uneven(k);
            let placed = simplify_region(&r, &opts()).unwrap();
            check(&r, &placed);
            // Linear count: at most k circles for k sides.
            assert!(placed.len() <= k, "k = {k}: {} circles", placed.len());
        }
    }

    #[test]
    fn cap_reports_overflow() {
        let o = PackOptions { max_circles: Some(1), ..opts() };
        assert!(matches!(simplify_region(&uneven(12), &o), Err(PackError::Overflow(1))));
    }

    #[test]
    fn unit_square_centered_gaps_are_small() {
        let sq = Polygon::new(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)],
            vec![],
        )
        .unwrap();
        let o = PackOptions::new(PackMode::BoundaryCentered);
        let pk = crate::packing::pack(&sq, &o).unwrap();
        let gaps = pk.gaps();
        assert!(!gaps.is_empty());
        for g in &gaps {
            assert!(g.sides.len() <= 4, "gap with {} sides", g.sides.len());
        }
        for t in &pk.tangencies {
            assert!(sq.dist_to_boundary(t.point) > 1e-9);
        }
        let vertex = pk.circles.iter().filter(|c| c.tag == Provenance::VertexProtection);
        for c in vertex {
            approx::assert_relative_eq!(c.circle.radius, 0.25, epsilon = 1e-12);
        }
        let _ = (Gap::from_sides(Vec::<GapSide>::new(), Tolerances::default()), SideGeom::Segment);
    }
}
