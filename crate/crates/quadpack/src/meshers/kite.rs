//! Kite meshes: every tangency and boundary contact is joined to the circle
//! centers, and every gap is fanned from its hub (circumcenter, boundary
//! midpoint or polygon vertex) so that each element is a kite.

use super::{lgap_of, touch, LGap, LSide, MeshingError, V};
use crate::geom::{tangent_circles, Circle, Point, Polygon, Site, Tolerances};
use crate::mesh::{MeshBuilder, QuadMesh, VertexKey};
use crate::packing::{
    gap::{fit_circle, goodness_margin},
    split_bad_gap_with, Gap, GapKind, PackMode, PackOptions, Packing, SplitStyle,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Ratio of circle-center separation to strip width above which a gap
/// between two parallel edges gets the eight-circle construction.
pub const TWO_BOUNDARY_THRESHOLD: f64 = 4.0;

/// Most lining circles a single one-boundary gap may take.
const LINING_LIMIT: usize = 64;

/// How many packing gaps fell into each case.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KiteCensus {
    pub three_sided: usize,
    pub good_four_sided: usize,
    /// Bad gaps split by a circle centered between the opposite circles.
    pub bad_collinear: usize,
    /// Bad gaps split by an off-axis circle.
    pub bad_general: usize,
    pub boundary_three_sided: usize,
    pub convex_vertex: usize,
    pub reflex_vertex: usize,
    pub one_boundary: usize,
    pub two_boundary: usize,
    /// Kites emitted by the one- and two-boundary constructions.
    pub construction_kites: usize,
    /// Largest number of boundary circles a single one-boundary gap needed.
    pub max_boundary_circles: usize,
}

impl KiteCensus {
    /// Kite count implied by the case counts.
    pub fn expected_kites(&self) -> usize {
        3 * self.three_sided
            + 4 * self.good_four_sided
            + 7 * self.bad_collinear
            + 8 * self.bad_general
            + 2 * self.boundary_three_sided
            + self.convex_vertex
            + 2 * self.reflex_vertex
            + self.construction_kites
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KiteMesh {
    pub mesh: QuadMesh,
    pub census: KiteCensus,
    /// Splitters and construction circles added on top of the packing.
    pub aux_circles: Vec<Circle>,
}

/// Kites and auxiliary circles produced for one boundary gap.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFill {
    pub quads: Vec<[Point; 4]>,
    pub aux_circles: Vec<Circle>,
    /// Auxiliary circles tangent to the boundary edge.
    pub boundary_circles: usize,
}

enum ArcOutcome {
    Three,
    Good,
    BadCollinear,
    BadGeneral,
}

struct Ctx {
    tol: Tolerances,
    next_group: usize,
    kites: Vec<[V; 4]>,
    aux: Vec<Circle>,
}

impl Ctx {
    fn new(first_group: usize) -> Self {
        Ctx { tol: Tolerances::default(), next_group: first_group, kites: Vec::new(), aux: Vec::new() }
    }

    fn group(&mut self) -> usize {
        self.next_group += 1;
        self.next_group - 1
    }

    /// Kites of a gap bounded by three or four arcs.
    fn arc_gap(&mut self, lg: &LGap, hub_key: VertexKey) -> Result<ArcOutcome, MeshingError> {
        let lg = lg.clone().ccw();
        let pts = lg.points();
        match lg.n() {
            3 => {
                let hub = fit_circle(&pts)?.0.center;
                lg.fan(V::new(hub_key, hub), &mut self.kites);
                Ok(ArcOutcome::Three)
            }
            4 => {
                let margin = goodness_margin(&pts).unwrap_or(f64::NEG_INFINITY);
                if margin >= -self.tol.eps_rel {
                    let hub = fit_circle(&pts)?.0.center;
                    lg.fan(V::new(hub_key, hub), &mut self.kites);
                    return Ok(ArcOutcome::Good);
                }
                self.split(&lg)
            }
            n => Err(MeshingError::Unsupported(format!("arc gap with {n} sides"))),
        }
    }

    /// Split a bad four-arc gap and fan both halves. With a centered splitter
    /// its two kites merge into one whose diagonal joins the two hubs.
    fn split(&mut self, lg: &LGap) -> Result<ArcOutcome, MeshingError> {
        let gap = lg.to_gap()?;
        let sp = split_bad_gap_with(&gap, SplitStyle::PreferCollinear, self.tol)?;
        let (i, j) = sp.sides;
        let group = self.group();
        let n = sp.circle;
        let (ci, cj) = (lg.circle(i).unwrap(), lg.circle(j).unwrap());
        let ti = V::new(VertexKey::Aux(group, 2), touch(&ci, &n)?);
        let tj = V::new(VertexKey::Aux(group, 3), touch(&cj, &n)?);
        let nside = if sp.collinear { LSide::Edge } else { LGap::arc(n, VertexKey::Aux(group, 4)) };
        let s = |k: usize| lg.sides[k % 4];
        let c = |k: usize| lg.corners[k % 4];
        let child1 = LGap { sides: vec![s(i + 1), s(j), nside, s(i)], corners: vec![c(i + 1), c(j), tj, ti] };
        let child2 = LGap { sides: vec![s(j + 1), s(i), nside, s(j)], corners: vec![c(j + 1), c(i), ti, tj] };
        let h1 = V::new(VertexKey::Aux(group, 0), fit_circle(&child1.points())?.0.center);
        let h2 = V::new(VertexKey::Aux(group, 1), fit_circle(&child2.points())?.0.center);
        child1.fan(h1, &mut self.kites);
        child2.fan(h2, &mut self.kites);
        self.aux.push(n);
        if sp.collinear {
            self.kites.push([ti, h1, tj, h2]);
            Ok(ArcOutcome::BadCollinear)
        } else {
            Ok(ArcOutcome::BadGeneral)
        }
    }

    /// Fan a gap with one edge side and two arcs from the midpoint of the
    /// two contacts.
    fn boundary_three(&mut self, lg: &LGap, hub_key: VertexKey) {
        let n = lg.n();
        let ke = (0..n).find(|&k| matches!(lg.sides[k], LSide::Edge)).expect("edge side");
        let hub = lg.corners[ke].p.mid(lg.corners[(ke + 1) % n].p);
        lg.fan(V::new(hub_key, hub), &mut self.kites);
    }

    fn emitted_since(&self, start: usize) -> usize {
        self.kites.len() - start
    }
}

/// Keyed circles and tangency points local to one construction.
struct Local {
    group: usize,
    next: usize,
    circles: Vec<(Circle, V)>,
    tangency: BTreeMap<(usize, usize), V>,
    contact: BTreeMap<usize, V>,
}

impl Local {
    fn new(group: usize) -> Self {
        Local { group, next: 0, circles: Vec::new(), tangency: BTreeMap::new(), contact: BTreeMap::new() }
    }

    fn key(&mut self) -> VertexKey {
        self.next += 1;
        VertexKey::Aux(self.group, self.next - 1)
    }

    fn add(&mut self, c: Circle, center: Option<V>) -> usize {
        let v = match center {
            Some(v) => v,
            None => V::new(self.key(), c.center),
        };
        self.circles.push((c, v));
        self.circles.len() - 1
    }

    fn side(&self, i: usize) -> LSide {
        LSide::Arc { circle: self.circles[i].0, center: self.circles[i].1 }
    }

    fn t(&mut self, a: usize, b: usize) -> Result<V, MeshingError> {
        let k = (a.min(b), a.max(b));
        if let Some(v) = self.tangency.get(&k) {
            return Ok(*v);
        }
        let p = touch(&self.circles[a].0, &self.circles[b].0)?;
        let v = V::new(self.key(), p);
        self.tangency.insert(k, v);
        Ok(v)
    }

    fn on_line(&mut self, i: usize, o: Point, n: Point) -> V {
        if let Some(v) = self.contact.get(&i) {
            return *v;
        }
        let c = self.circles[i].0;
        let p = c.center - n * n.dot(c.center - o);
        let v = V::new(self.key(), p);
        self.contact.insert(i, v);
        v
    }
}

/// Smallest circle tangent to the line and both circles whose contact with
/// the line falls strictly between the two circles' feet and which overlaps
/// none of `avoid`.
fn fit_on_line(o: Point, n: Point, p: &Circle, q: &Circle, avoid: &[Circle]) -> Option<Circle> {
    let u = n.perp();
    let (sp, sq) = (u.dot(p.center - o), u.dot(q.center - o));
    let (lo, hi) = (sp.min(sq), sp.max(sq));
    tangent_circles(&[Site::Line { point: o, normal: n }, Site::Circle(*p), Site::Circle(*q)])
        .into_iter()
        .filter(|z| {
            let s = u.dot(z.center - o);
            s > lo && s < hi && n.dot(z.center - o) > 0.0
        })
        .find(|z| avoid.iter().all(|a| z.clearance(a) >= -1e-9 * z.radius.max(a.radius)))
}

/// One edge side and three arcs: line the edge with small circles until a
/// final circle closes the gap without touching the middle arc.
fn fill_one_boundary(ctx: &mut Ctx, lg: &LGap, opts: &PackOptions) -> Result<usize, MeshingError> {
    let lg = lg.clone().ccw();
    let ke = (0..4).find(|&k| matches!(lg.sides[k], LSide::Edge)).ok_or_else(|| MeshingError::Unsupported("no edge side".into()))?;
    // Walk: edge, A, B, C.
    let side = |d: usize| lg.sides[(ke + d) % 4];
    let corner = |d: usize| lg.corners[(ke + d) % 4];
    let (a_end, c_end) = (corner(1).p, corner(0).p);
    let dir = (a_end - c_end).unit();
    let (o, n) = (c_end, dir.perp());
    let circle = |s: LSide| match s {
        LSide::Arc { circle, center } => Ok((circle, center)),
        LSide::Edge => Err(MeshingError::Unsupported("expected an arc".into())),
    };
    let (ca, va) = circle(side(1))?;
    let (cb, vb) = circle(side(2))?;
    let (cc, vc) = circle(side(3))?;
    let clear_b = n.dot(cb.center - o) - cb.radius;
    if clear_b < opts.eps_sep * cb.radius * (1.0 - 1e-6) {
        return Err(MeshingError::AspectViolation(format!(
            "middle circle is {clear_b:.3e} from the edge, below {} of its radius",
            opts.eps_sep
        )));
    }
    let group = ctx.group();
    let mut loc = Local::new(group);
    let (ia, ib, ic) = (loc.add(ca, Some(va)), loc.add(cb, Some(vb)), loc.add(cc, Some(vc)));
    loc.tangency.insert((ia.min(ib), ia.max(ib)), corner(2));
    loc.tangency.insert((ib.min(ic), ib.max(ic)), corner(3));
    loc.contact.insert(ia, corner(1));
    loc.contact.insert(ic, corner(0));
    let (mut p, mut q) = (ia, ic);
    let mut subgaps: Vec<(LGap, bool)> = Vec::new();
    let mut added = 0;
    for _ in 0..LINING_LIMIT {
        let all: Vec<Circle> = loc.circles.iter().map(|c| c.0).collect();
        let others: Vec<Circle> = all.iter().enumerate().filter(|(k, _)| *k != p && *k != q).map(|(_, c)| *c).collect();
        let (cp, cq) = (loc.circles[p].0, loc.circles[q].0);
        if let Some(z) = fit_on_line(o, n, &cp, &cq, &others).filter(|z| z.clearance(&cb) > 0.0) {
            let iz = loc.add(z, None);
            ctx.aux.push(z);
            added += 1;
            let (tp, tz, tq) = (loc.on_line(p, o, n), loc.on_line(iz, o, n), loc.on_line(q, o, n));
            subgaps.push((LGap { sides: vec![LSide::Edge, loc.side(p), loc.side(iz)], corners: vec![tz, tp, loc.t(p, iz)?] }, false));
            subgaps.push((LGap { sides: vec![LSide::Edge, loc.side(iz), loc.side(q)], corners: vec![tq, tz, loc.t(iz, q)?] }, false));
            let corners = vec![loc.t(iz, p)?, loc.t(p, ib)?, loc.t(ib, q)?, loc.t(q, iz)?];
            subgaps.push((LGap { sides: vec![loc.side(p), loc.side(ib), loc.side(q), loc.side(iz)], corners }, true));
            for (g, arcs) in subgaps {
                let key = VertexKey::Aux(ctx.group(), 0);
                if arcs {
                    ctx.arc_gap(&g, key)?;
                } else {
                    ctx.boundary_three(&g, key);
                }
            }
            return Ok(added);
        }
        // Advance the lining on the side farther from the middle arc's
        // lowest point, so the two ends approach it without overshooting.
        let u = n.perp();
        let low = u.dot(cb.center - o);
        let dist = |c: &Circle| (u.dot(c.center - o) - low).abs();
        let order = if dist(&cp) >= dist(&cq) { [p, q] } else { [q, p] };
        let mut advanced = false;
        for old in order {
            let all: Vec<Circle> = loc.circles.iter().enumerate().filter(|(k, _)| *k != old && *k != ib).map(|(_, c)| c.0).collect();
            let Some(new) = fit_on_line(o, n, &loc.circles[old].0, &cb, &all) else { continue };
            let inew = loc.add(new, None);
            ctx.aux.push(new);
            added += 1;
            let (to, tn) = (loc.on_line(old, o, n), loc.on_line(inew, o, n));
            subgaps.push((LGap { sides: vec![LSide::Edge, loc.side(old), loc.side(inew)], corners: vec![tn, to, loc.t(old, inew)?] }, false));
            subgaps.push((LGap { sides: vec![loc.side(old), loc.side(ib), loc.side(inew)], corners: vec![loc.t(inew, old)?, loc.t(old, ib)?, loc.t(ib, inew)?] }, true));
            if old == p {
                p = inew;
            } else {
                q = inew;
            }
            advanced = true;
            break;
        }
        if !advanced {
            return Err(MeshingError::AspectViolation("no lining circle fits beside the middle arc".into()));
        }
    }
    Err(MeshingError::AspectViolation("edge lining did not close".into()))
}

/// Two arcs between two parallel edges: medium circles crossing each edge
/// perpendicularly at the arcs' contacts, two overlapping large circles
/// centered on the edges, and one small circle at each end.
fn fill_two_boundary(ctx: &mut Ctx, lg: &LGap, edges: [(Point, Point); 2]) -> Result<(), MeshingError> {
    let lg = lg.clone().ccw();
    let k1 = (0..4).find(|&k| matches!(lg.sides[k], LSide::Edge)).unwrap();
    let k2 = (k1 + 2) % 4;
    if !matches!(lg.sides[k2], LSide::Edge) {
        return Err(MeshingError::Unsupported("edge sides are not opposite".into()));
    }
    // Which of the two supplied edge segments is side k1: the one whose line
    // holds the corner at its start.
    let on = |(a, b): (Point, Point), p: Point| ((b - a).unit().cross(p - a)).abs();
    let e1 = if on(edges[0], lg.corners[k1].p) <= on(edges[1], lg.corners[k1].p) { edges[0] } else { edges[1] };
    let e2 = if e1 == edges[0] { edges[1] } else { edges[0] };
    let u = (e1.1 - e1.0).unit();
    let u2 = (e2.1 - e2.0).unit();
    if u.cross(u2).abs() > 1e-9 || u.dot(u2) > 0.0 {
        return Err(MeshingError::Unsupported("edges bounding the gap are not parallel".into()));
    }
    let nrm = u.perp();
    let o = e1.0;
    let w = nrm.dot(e2.0 - o);
    let frame = |p: Point| Point::new(u.dot(p - o), nrm.dot(p - o));
    let world = |q: Point| o + u * q.x + nrm * q.y;
    let arc = |k: usize| match lg.sides[k % 4] {
        LSide::Arc { circle, center } => (circle, center),
        LSide::Edge => unreachable!(),
    };
    // Side after e1 and side after e2; corners give the contacts.
    let (r, vr) = arc(k1 + 1);
    let (l, vl) = arc(k2 + 1);
    let (r_bot, r_top) = (lg.corners[(k1 + 1) % 4], lg.corners[k2]);
    let (l_top, l_bot) = (lg.corners[(k2 + 1) % 4], lg.corners[k1]);
    for c in [r, l] {
        if (2.0 * c.radius - w).abs() > 1e-9 * w {
            return Err(MeshingError::Unsupported("arc does not span the strip".into()));
        }
    }
    let (xr, xl) = (frame(r.center).x, frame(l.center).x);
    let aspect = (xr - xl).abs() / w;
    if aspect < TWO_BOUNDARY_THRESHOLD {
        return Err(MeshingError::ThresholdNotMet(aspect));
    }
    let group = ctx.group();
    let mut loc = Local::new(group);
    let mk = |x: f64, y: f64, rad: f64| Circle::new(world(Point::new(x, y)), rad);
    let xm = 0.5 * (xr + xl);
    let rg = 0.5 * (xr - xl).abs() - w;
    let gb = loc.add(mk(xm, 0.0, rg)?, None);
    let gt = loc.add(mk(xm, w, rg)?, None);
    let h = (rg * rg - 0.25 * w * w).sqrt();
    let mut lens = Vec::new();
    for (xe, center, bot, top) in [(xr, vr, r_bot, r_top), (xl, vl, l_bot, l_top)] {
        let s = (xm - xe).signum();
        let mb = loc.add(mk(xe + s * 0.5 * w, 0.0, 0.5 * w)?, None);
        let mt = loc.add(mk(xe + s * 0.5 * w, w, 0.5 * w)?, None);
        let (cmb, cmt, cgb, cgt) = (loc.circles[mb].0, loc.circles[mt].0, loc.circles[gb].0, loc.circles[gt].0);
        let small = tangent_circles(&[Site::Circle(cmb), Site::Circle(cmt), Site::Circle(cgb)])
            .into_iter()
            .find(|z| {
                let f = frame(z.center);
                (f.y - 0.5 * w).abs() <= 1e-9 * w && (f.x - xe) * s > 0.0 && (f.x - xm) * s < 0.0
            })
            .ok_or_else(|| MeshingError::Unsupported("no corner circle fits".into()))?;
        if small.clearance(&cgt).abs() > 1e-9 * w {
            return Err(MeshingError::Unsupported("corner circle misses the upper large circle".into()));
        }
        let sm = loc.add(small, None);
        let x = V::new(loc.key(), world(Point::new(xm - s * h, 0.5 * w)));
        lens.push(x);
        let x1 = loc.t(mb, mt)?;
        let (vmb, vmt) = (loc.circles[mb].1, loc.circles[mt].1);
        ctx.kites.push([center, bot, vmb, x1]);
        ctx.kites.push([center, x1, vmt, top]);
        let gaps = [
            LGap { sides: vec![loc.side(mb), loc.side(mt), loc.side(sm)], corners: vec![loc.t(sm, mb)?, x1, loc.t(mt, sm)?] },
            LGap { sides: vec![loc.side(mb), loc.side(sm), loc.side(gb)], corners: vec![loc.t(gb, mb)?, loc.t(mb, sm)?, loc.t(sm, gb)?] },
            LGap { sides: vec![loc.side(mt), loc.side(sm), loc.side(gt)], corners: vec![loc.t(gt, mt)?, loc.t(mt, sm)?, loc.t(sm, gt)?] },
            // The large circles cross at `x` instead of touching.
            LGap { sides: vec![loc.side(sm), loc.side(gb), loc.side(gt)], corners: vec![loc.t(sm, gt)?, loc.t(sm, gb)?, x] },
        ];
        for g in gaps {
            let key = VertexKey::Aux(ctx.group(), 0);
            ctx.arc_gap(&g, key)?;
        }
    }
    let (vgb, vgt) = (loc.circles[gb].1, loc.circles[gt].1);
    ctx.kites.push([vgb, lens[0], vgt, lens[1]]);
    ctx.aux.extend(loc.circles.iter().map(|c| c.0));
    Ok(())
}

fn build(kites: &[[V; 4]], poly: &Polygon) -> QuadMesh {
    let mut b = MeshBuilder::new();
    for k in kites {
        let q = k.map(|v| b.vertex(v.key, v.p));
        b.quad(q);
    }
    b.finish(poly)
}

fn edge_segments(g: &Gap) -> Vec<(Point, Point)> {
    g.sides
        .iter()
        .filter_map(|s| match s.geom {
            crate::packing::SideGeom::Segment(a, b) => Some((a, b)),
            _ => None,
        })
        .collect()
}

fn mesh_gap(ctx: &mut Ctx, census: &mut KiteCensus, g: &Gap, gi: usize, opts: &PackOptions) -> Result<(), MeshingError> {
    let lg = lgap_of(g, gi)?;
    let hub_key = VertexKey::Site(gi);
    match g.kind {
        GapKind::ThreeSided | GapKind::GoodFourSided | GapKind::BadFourSided => match ctx.arc_gap(&lg, hub_key)? {
            ArcOutcome::Three => census.three_sided += 1,
            ArcOutcome::Good => census.good_four_sided += 1,
            ArcOutcome::BadCollinear => census.bad_collinear += 1,
            ArcOutcome::BadGeneral => census.bad_general += 1,
        },
        GapKind::BoundaryThreeSided => {
            ctx.boundary_three(&lg, hub_key);
            census.boundary_three_sided += 1;
        }
        GapKind::ConvexVertexGap | GapKind::ReflexVertexGap => {
            let v = *lg
                .corners
                .iter()
                .find(|c| matches!(c.key, VertexKey::Corner(..)))
                .ok_or_else(|| MeshingError::UnhandledGap { gap: gi, detail: "vertex gap without a vertex".into() })?;
            lg.fan(v, &mut ctx.kites);
            if g.kind == GapKind::ConvexVertexGap {
                census.convex_vertex += 1;
            } else {
                census.reflex_vertex += 1;
            }
        }
        GapKind::BoundaryFourSided => {
            let start = ctx.kites.len();
            match g.edge_sides() {
                1 => {
                    let k = fill_one_boundary(ctx, &lg, opts)?;
                    census.one_boundary += 1;
                    census.max_boundary_circles = census.max_boundary_circles.max(k);
                }
                2 => {
                    let segs = edge_segments(g);
                    fill_two_boundary(ctx, &lg, [segs[0], segs[1]])
                        .map_err(|e| MeshingError::UnhandledGap { gap: gi, detail: e.to_string() })?;
                    census.two_boundary += 1;
                }
                _ => unreachable!(),
            }
            census.construction_kites += ctx.emitted_since(start);
        }
        GapKind::Unresolved => {
            return Err(MeshingError::UnhandledGap { gap: gi, detail: format!("{} sides, {} on edges", g.sides.len(), g.edge_sides()) })
        }
    }
    Ok(())
}

/// Kite mesh of a boundary-tangent packing.
pub fn mesh_kites(pk: &Packing, poly: &Polygon) -> Result<QuadMesh, MeshingError> {
    Ok(mesh_kites_detailed(pk, poly)?.mesh)
}

pub fn mesh_kites_detailed(pk: &Packing, poly: &Polygon) -> Result<KiteMesh, MeshingError> {
    mesh_kites_with(pk, poly, &PackOptions::new(PackMode::BoundaryTangent))
}

pub fn mesh_kites_with(pk: &Packing, poly: &Polygon, opts: &PackOptions) -> Result<KiteMesh, MeshingError> {
    if pk.mode != PackMode::BoundaryTangent {
        return Err(MeshingError::InvalidPackingMode);
    }
    let gaps = pk.gaps_tol(opts.tol);
    let mut ctx = Ctx::new(gaps.len());
    ctx.tol = opts.tol;
    let mut census = KiteCensus::default();
    for (gi, g) in gaps.iter().enumerate() {
        mesh_gap(&mut ctx, &mut census, g, gi, opts)?;
    }
    Ok(KiteMesh { mesh: build(&ctx.kites, poly), census, aux_circles: ctx.aux })
}

fn fill_points(ctx: Ctx, boundary_circles: usize) -> BoundaryFill {
    BoundaryFill { quads: ctx.kites.iter().map(|k| k.map(|v| v.p)).collect(), aux_circles: ctx.aux, boundary_circles }
}

/// Kites for a gap bounded by circles only: a fan around the gap's
/// circumcenter, or around a splitter for a bad four-sided gap.
pub fn mesh_arc_gap(g: &Gap) -> Result<BoundaryFill, MeshingError> {
    if !g.all_arcs() {
        return Err(MeshingError::Unsupported("gap touches the boundary".into()));
    }
    let lg = lgap_of(g, 0)?;
    let mut ctx = Ctx::new(1);
    ctx.arc_gap(&lg, VertexKey::Site(0))?;
    Ok(fill_points(ctx, 0))
}

/// Kites for a four-sided gap with exactly one boundary side.
pub fn mesh_one_boundary_gap(g: &Gap, opts: &PackOptions) -> Result<BoundaryFill, MeshingError> {
    if g.sides.len() != 4 || g.edge_sides() != 1 {
        return Err(MeshingError::Unsupported("not a one-boundary four-sided gap".into()));
    }
    let lg = lgap_of(g, 0)?;
    let mut ctx = Ctx::new(1);
    let k = fill_one_boundary(&mut ctx, &lg, opts)?;
    Ok(fill_points(ctx, k))
}

/// Kites for a four-sided gap between two parallel boundary edges.
pub fn mesh_two_boundary_gap(g: &Gap) -> Result<BoundaryFill, MeshingError> {
    if g.sides.len() != 4 || g.edge_sides() != 2 {
        return Err(MeshingError::Unsupported("not a two-boundary four-sided gap".into()));
    }
    let lg = lgap_of(g, 0)?;
    let segs = edge_segments(g);
    let mut ctx = Ctx::new(1);
    fill_two_boundary(&mut ctx, &lg, [segs[0], segs[1]])?;
    Ok(fill_points(ctx, 0))
}
