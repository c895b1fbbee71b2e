//! Voronoi quadrilateralization of a boundary-centered packing: one element
//! per tangency, spanned by the two circle centers and the sites of the two
//! gaps meeting at the tangency.

use super::{corner_key, MeshingError};
use crate::geom::{
    line_intersection, line_param, power, signed_area, tangent_circles, Circle, Point, Polygon, Site, Tolerances,
};
use crate::mesh::{MeshBuilder, QuadMesh, VertexKey};
use crate::packing::{
    faces::{CornerKind, SideRef},
    gap::{fit_circle, split_four_gap},
    Gap, GapKind, PackMode, Packing, Provenance, SplitStyle, Splitter,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which family circle a mesh vertex is the center of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyRef {
    Primal(usize),
    Dual(usize),
}

/// Circle through the tangency points of one gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualCircle {
    pub circle: Circle,
    /// Points shared with each primal circle: tangencies, plus mirror images
    /// across the edge for gaps that reach the boundary.
    pub touches: Vec<(usize, Point)>,
}

/// Packing circles together with the gap circles, and the role of every
/// vertex of the mesh built from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerFamily {
    pub primal: Vec<Circle>,
    pub dual: Vec<DualCircle>,
    pub roles: Vec<FamilyRef>,
}

impl PowerFamily {
    fn radius(&self, r: FamilyRef) -> f64 {
        match r {
            FamilyRef::Primal(i) => self.primal[i].radius,
            FamilyRef::Dual(g) => self.dual[g].circle.radius,
        }
    }

    fn all(&self) -> impl Iterator<Item = (FamilyRef, Circle)> + '_ {
        self.primal
            .iter()
            .enumerate()
            .map(|(i, c)| (FamilyRef::Primal(i), *c))
            .chain(self.dual.iter().enumerate().map(|(g, d)| (FamilyRef::Dual(g), d.circle)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiMesh {
    pub mesh: QuadMesh,
    /// Tangency point generating each quad.
    pub generators: Vec<Point>,
    pub family: PowerFamily,
    /// The packing after bad-gap repair.
    pub packing: Packing,
    pub splitters_added: usize,
    /// Cells whose corners are not in convex position or miss their generator.
    pub diagnostics: Vec<String>,
}

/// Outcome of [`power_duality_check`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub edges_checked: usize,
    /// Largest |power| of a lune corner with respect to its edge's circles,
    /// divided by the squared radius.
    pub max_residual: f64,
    pub failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Where the perpendicular from a generator meets the cell side from a
/// circle center to this gap's site: the midpoint of the circle's chord
/// between its two corners. Returns the smallest distance of that point
/// from either end of the side, as a fraction of the side.
fn foot_margin(g: &Gap) -> f64 {
    let Ok((dual, _)) = fit_circle(&g.corners()) else { return f64::NEG_INFINITY };
    g.sides
        .iter()
        .filter_map(|side| side.circle().map(|c| (c, side.start.mid(side.end))))
        .map(|(c, m)| {
            let t = line_param(m, c.center, dual.center);
            t.min(1.0 - t)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Split every bad four-sided gap with an off-axis circle that overlaps
/// nothing.
fn repair_bad_gaps(pk: &mut Packing, tol: Tolerances) -> Result<usize, MeshingError> {
    let mut added = 0;
    for _ in 0..8 {
        let gaps = pk.gaps_tol(tol);
        let mut progress = false;
        for (gi, g) in gaps.iter().enumerate().filter(|(_, g)| g.kind == GapKind::BadFourSided) {
            let sp = match split_four_gap(g, SplitStyle::OffAxis, tol) {
                Ok(sp) if sp.overlaps.is_empty() => sp,
                _ => {
                    return Err(MeshingError::UnhandledGap {
                        gap: gi,
                        detail: "no non-overlapping splitter for a bad gap".into(),
                    })
                }
            };
            add_splitter(pk, g, &sp)?;
            added += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    Ok(added)
}

fn add_splitter(pk: &mut Packing, g: &Gap, sp: &Splitter) -> Result<usize, MeshingError> {
    let (a, b) = (g.sides[sp.sides.0].circle_id().unwrap(), g.sides[sp.sides.1].circle_id().unwrap());
    let n = pk.add(sp.circle, Provenance::Auxiliary);
    pk.touch(a, n, 1e-9)?;
    pk.touch(b, n, 1e-9)?;
    Ok(n)
}

fn misplaced_feet(gaps: &[Gap]) -> usize {
    gaps.iter().filter(|g| misplaced(g)).count()
}

/// Most circles one offending gap may receive.
const FILL_DEPTH: usize = 8;

fn misplaced(g: &Gap) -> bool {
    g.kind == GapKind::GoodFourSided && foot_margin(g) <= 1e-9
}

/// Packings obtained from `pk` by one extra circle in gap `g`: the
/// two-sided splitter, and circles inscribed against three of its four
/// sides. Each comes with the index of the new circle.
fn candidates(pk: &Packing, g: &Gap, tol: Tolerances) -> Vec<(Packing, usize)> {
    let ids: Vec<usize> = g.sides.iter().filter_map(|s| s.circle_id()).collect();
    let mut out = Vec::new();
    if let Ok(sp) = split_four_gap(g, SplitStyle::OffAxis, tol) {
        if sp.overlaps.is_empty() {
            let mut t = pk.clone();
            if let Ok(n) = add_splitter(&mut t, g, &sp) {
                out.push((t, n));
            }
        }
    }
    if ids.len() != 4 {
        return out;
    }
    let mut q: [Point; 4] = std::array::from_fn(|k| pk.circles[ids[k]].circle.center);
    if signed_area(&q) < 0.0 {
        q.reverse();
    }
    for skip in 0..4 {
        let tri = [ids[(skip + 1) % 4], ids[(skip + 2) % 4], ids[(skip + 3) % 4]];
        let Some(z) = inscribe(pk, tri) else { continue };
        if !strictly_inside(&q, z.center) {
            continue;
        }
        let mut t = pk.clone();
        let n = t.add(z, Provenance::Auxiliary);
        if tri.iter().all(|&i| t.touch(i, n, 1e-9).is_ok()) {
            out.push((t, n));
        }
    }
    out
}

/// Fill gap `g` with up to `depth` circles so that no gap around the new
/// circles is bad or puts a foot outside a side. Each step keeps the
/// candidate whose worst remaining gap is closest to acceptable.
fn fix_gap(pk: &Packing, g: &Gap, depth: usize, tol: Tolerances) -> Option<Packing> {
    let mut pk = pk.clone();
    let mut g = g.clone();
    for _ in 0..depth {
        let mut best: Option<(f64, Packing, Gap)> = None;
        for (t, n) in candidates(&pk, &g, tol) {
            let after = t.gaps_tol(tol);
            let local: Vec<&Gap> = after.iter().filter(|h| h.sides.iter().any(|s| s.circle_id() == Some(n))).collect();
            if local.iter().any(|h| h.kind == GapKind::BadFourSided) {
                continue;
            }
            let Some(worst) = local.iter().filter(|h| misplaced(h)).min_by(|a, b| foot_margin(a).total_cmp(&foot_margin(b))) else {
                return Some(t);
            };
            let m = foot_margin(worst);
            if best.as_ref().is_none_or(|(bm, _, _)| m > *bm) {
                best = Some((m, t.clone(), (*worst).clone()));
            }
        }
        let (_, t, h) = best?;
        pk = t;
        g = h;
    }
    None
}

/// Best-effort pass over good four-sided gaps whose cells would put a
/// perpendicular foot outside a side. Three-sided gaps always keep their
/// feet inside, so such a gap is filled with a few extra circles, and the
/// result is kept only when it leaves no bad gap behind and lowers the
/// number of offending gaps.
fn repair_feet(pk: &mut Packing, tol: Tolerances) -> usize {
    let gaps = pk.gaps_tol(tol);
    let mut current = misplaced_feet(&gaps);
    let before = pk.circles.len();
    for g in gaps.iter().filter(|g| misplaced(g)) {
        let Some(t) = fix_gap(pk, g, FILL_DEPTH, tol) else { continue };
        let after = t.gaps_tol(tol);
        let left = misplaced_feet(&after);
        if left < current && after.iter().all(|h| h.kind != GapKind::BadFourSided) {
            *pk = t;
            current = left;
        }
    }
    pk.circles.len() - before
}

/// Circle externally tangent to the three given packing circles that
/// overlaps no circle of the packing and stays clear of the boundary.
fn inscribe(pk: &Packing, ids: [usize; 3]) -> Option<Circle> {
    let cs = ids.map(|i| pk.circles[i].circle);
    tangent_circles(&cs.map(Site::Circle)).into_iter().find(|z| {
        cs.iter().all(|c| (z.center.dist(c.center) - z.radius - c.radius).abs() <= 1e-9 * z.radius.max(c.radius))
            && pk.circles.iter().all(|c| z.clearance(&c.circle) >= -1e-9 * z.radius.max(c.circle.radius))
            && pk.domain.contains(z.center)
            && pk.domain.dist_to_boundary(z.center) > z.radius
    })
}

/// A circle touching only two others has both of its gap sites on the
/// bisector of its chord, which runs through its center, so its cells fold
/// flat. Give each such circle a third neighbor inside one of its interior
/// gaps.
fn repair_valence(pk: &mut Packing, tol: Tolerances) -> Result<usize, MeshingError> {
    let mut added = 0;
    for _ in 0..4 {
        let mut valence = vec![0usize; pk.circles.len()];
        for t in &pk.tangencies {
            valence[t.a] += 1;
            valence[t.b] += 1;
        }
        let thin: Vec<usize> = (0..pk.circles.len()).filter(|&i| valence[i] == 2).collect();
        if thin.is_empty() {
            return Ok(added);
        }
        let gaps = pk.gaps_tol(tol);
        let mut used = vec![false; gaps.len()];
        let mut progress = false;
        for x in thin {
            let found = gaps.iter().enumerate().find_map(|(gi, g)| {
                let ids: Vec<usize> = g.sides.iter().filter_map(|s| s.circle_id()).collect();
                let kx = ids.iter().position(|&i| i == x)?;
                if used[gi] || !g.all_arcs() {
                    return None;
                }
                let n = ids.len();
                let triples = [[n - 1, 0, 1], [0, 1, 2], [n - 2, n - 1, 0]];
                triples.iter().find_map(|t| {
                    let tri = t.map(|d| ids[(kx + d) % n]);
                    inscribe(pk, tri).map(|z| (gi, tri, z))
                })
            });
            let Some((gi, tri, z)) = found else { continue };
            used[gi] = true;
            let n = pk.add(z, Provenance::Auxiliary);
            for i in tri {
                pk.touch(i, n, 1e-9)?;
            }
            added += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    Ok(added)
}

fn reflect(p: Point, a: Point, b: Point) -> Point {
    let u = (b - a).unit();
    let foot = a + u * u.dot(p - a);
    foot * 2.0 - p
}

/// Site and dual circle of one gap.
fn gap_site(g: &Gap, gi: usize, pk: &Packing) -> Result<(Point, DualCircle), MeshingError> {
    let n = g.sides.len();
    let mut touches = Vec::new();
    for k in 0..n {
        if g.sides[k].corner == CornerKind::Tangency {
            let (SideRef::Circle(a), SideRef::Circle(b)) = (g.sides[(k + n - 1) % n].object, g.sides[k].object) else {
                unreachable!()
            };
            touches.push((a, g.sides[k].start));
            touches.push((b, g.sides[k].start));
        }
    }
    if g.all_arcs() {
        let c = fit_circle(&g.corners())?.0;
        return Ok((c.center, DualCircle { circle: c, touches }));
    }
    if g.kind != GapKind::BoundaryFourSided || g.edge_sides() != 1 {
        return Err(MeshingError::UnhandledGap { gap: gi, detail: format!("{:?} in a centered packing", g.kind) });
    }
    let ke = (0..n).find(|&k| g.sides[k].is_edge()).unwrap();
    let SideRef::Edge(e) = g.sides[ke].object else { unreachable!() };
    let (a, b) = pk.domain.edge(e);
    // The middle arc faces the edge; its two tangencies bound the chord.
    let mid = g.sides[(ke + 2) % n];
    let (t1, t2) = (mid.start, mid.end);
    let cx = mid.circle().unwrap().center;
    let chord = t2 - t1;
    let dir = chord.perp();
    let site = line_intersection(cx, dir, a, b - a)
        .ok_or_else(|| MeshingError::UnhandledGap { gap: gi, detail: "chord bisector parallel to the edge".into() })?;
    // Mirror images of the tangencies complete the lune corners of the two
    // boundary-centered circles.
    for side in [(ke + 1) % n, (ke + 3) % n] {
        let id = g.sides[side].circle_id().unwrap();
        let t = if side == (ke + 1) % n { t1 } else { t2 };
        touches.push((id, reflect(t, a, b)));
    }
    let circle = Circle::new(site, site.dist(t1))?;
    Ok((site, DualCircle { circle, touches }))
}

fn strictly_inside(q: &[Point; 4], p: Point) -> bool {
    (0..4).all(|k| (q[(k + 1) % 4] - q[k]).cross(p - q[k]) > 0.0)
}

fn convex(q: &[Point; 4]) -> bool {
    (0..4).all(|k| (q[(k + 1) % 4] - q[k]).cross(q[(k + 2) % 4] - q[(k + 1) % 4]) > 0.0)
}

/// Voronoi mesh of a boundary-centered packing.
pub fn mesh_voronoi(pk: &Packing, poly: &Polygon) -> Result<QuadMesh, MeshingError> {
    Ok(mesh_voronoi_detailed(pk, poly)?.mesh)
}

/// Voronoi mesh of a boundary-centered packing, with bad gaps split and
/// low-valence circles relieved first. When extra circles can bring every
/// perpendicular foot inside its side, they are added too; a partial fix
/// is discarded so that element counts stay proportional to the packing.
pub fn mesh_voronoi_detailed(pk: &Packing, poly: &Polygon) -> Result<VoronoiMesh, MeshingError> {
    if pk.mode != PackMode::BoundaryCentered {
        return Err(MeshingError::InvalidPackingMode);
    }
    let tol = Tolerances::default();
    let (mut pk, mut splitters_added) = repair(pk.clone(), false, tol)?;
    if misplaced_feet(&pk.gaps_tol(tol)) > 0 {
        let (t, more) = repair(pk.clone(), true, tol)?;
        if misplaced_feet(&t.gaps_tol(tol)) == 0 {
            pk = t;
            splitters_added += more;
        }
    }
    build_cells(pk, splitters_added, poly, tol)
}

/// Split bad gaps and relieve valence until nothing changes; with `feet`,
/// also fill gaps with misplaced feet once the first two are settled.
fn repair(mut pk: Packing, feet: bool, tol: Tolerances) -> Result<(Packing, usize), MeshingError> {
    let mut added = 0;
    for _ in 0..12 {
        let mut n = repair_bad_gaps(&mut pk, tol)? + repair_valence(&mut pk, tol)?;
        if n == 0 && feet {
            n = repair_feet(&mut pk, tol);
        }
        if n == 0 {
            break;
        }
        added += n;
    }
    Ok((pk, added))
}

fn build_cells(pk: Packing, splitters_added: usize, poly: &Polygon, tol: Tolerances) -> Result<VoronoiMesh, MeshingError> {
    let gaps = pk.gaps_tol(tol);
    let mut sites = Vec::with_capacity(gaps.len());
    let mut dual = Vec::with_capacity(gaps.len());
    let mut incident: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (gi, g) in gaps.iter().enumerate() {
        let (s, d) = gap_site(g, gi, &pk)?;
        sites.push(s);
        dual.push(d);
        for k in 0..g.sides.len() {
            if let Some(VertexKey::Tangency(a, b)) = corner_key(g, k) {
                incident.entry((a, b)).or_default().push(gi);
            }
        }
    }
    let mut b = MeshBuilder::new();
    let mut roles = Vec::new();
    let mut generators = Vec::new();
    let mut diagnostics = Vec::new();
    let mut vertex = |b: &mut MeshBuilder, key: VertexKey, p: Point, role: FamilyRef| {
        let i = b.vertex(key, p);
        if i == roles.len() {
            roles.push(role);
        }
        i
    };
    for t in &pk.tangencies {
        let Some(gs) = incident.get(&(t.a, t.b)) else {
            diagnostics.push(format!("tangency {}-{} borders no gap", t.a, t.b));
            continue;
        };
        if gs.len() != 2 {
            return Err(MeshingError::DegenerateCell { cell: generators.len(), detail: format!("tangency {}-{} borders {} gaps", t.a, t.b, gs.len()) });
        }
        let (ca, cb) = (pk.circles[t.a].circle.center, pk.circles[t.b].circle.center);
        let q = [
            vertex(&mut b, VertexKey::Center(t.a), ca, FamilyRef::Primal(t.a)),
            vertex(&mut b, VertexKey::Site(gs[0]), sites[gs[0]], FamilyRef::Dual(gs[0])),
            vertex(&mut b, VertexKey::Center(t.b), cb, FamilyRef::Primal(t.b)),
            vertex(&mut b, VertexKey::Site(gs[1]), sites[gs[1]], FamilyRef::Dual(gs[1])),
        ];
        b.quad(q);
        generators.push(t.point);
    }
    let mesh = b.finish(poly);
    for (k, gp) in generators.iter().enumerate() {
        let q = mesh.quad_points(k);
        if !convex(&q) {
            diagnostics.push(format!("cell {k}: corners not in convex position"));
        } else if !strictly_inside(&q, *gp) {
            diagnostics.push(format!("cell {k}: generator outside its cell"));
        }
    }
    let family = PowerFamily { primal: pk.geometry(), dual, roles };
    Ok(VoronoiMesh { mesh, generators, family, packing: pk, splitters_added, diagnostics })
}

fn circle_intersections(a: &Circle, b: &Circle) -> Option<[Point; 2]> {
    let d = a.center.dist(b.center);
    if d >= a.radius + b.radius || d <= (a.radius - b.radius).abs() || d == 0.0 {
        return None;
    }
    let x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h = (a.radius * a.radius - x * x).max(0.0).sqrt();
    let u = (b.center - a.center) / d;
    let m = a.center + u * x;
    Some([m + u.perp() * h, m - u.perp() * h])
}

/// Check that every mesh edge is an edge of the power diagram of the family:
/// its lune corners have zero power for the edge's two circles and no larger
/// power for any other visible circle. Pairs that are not mesh edges must
/// not meet at an undominated point.
pub fn power_duality_check(mesh: &QuadMesh, fam: &PowerFamily, poly: &Polygon) -> DualityReport {
    let mut rep = DualityReport::default();
    if fam.roles.len() != mesh.vertices.len() {
        rep.failures.push("family roles do not match mesh vertices".into());
        return rep;
    }
    let eps = 1e-9;
    let circle_at = |v: usize| Circle { center: mesh.vertices[v], radius: fam.radius(fam.roles[v]) };
    // A point is dominated when some visible circle other than the excluded
    // ones has power above tolerance there.
    let dominated = |p: Point, skip: &[FamilyRef]| {
        fam.all().any(|(r, c)| {
            !skip.contains(&r) && power(p, &c) > eps * c.radius * c.radius && poly.segment_inside(p, c.center)
        })
    };
    let mut is_edge = std::collections::BTreeSet::new();
    for &(u, v) in mesh.edge_table().keys() {
        rep.edges_checked += 1;
        let (ru, rv) = (fam.roles[u], fam.roles[v]);
        let (pv, dv, p_idx) = match (ru, rv) {
            (FamilyRef::Primal(i), FamilyRef::Dual(g)) => (u, v, (i, g)),
            (FamilyRef::Dual(g), FamilyRef::Primal(i)) => (v, u, (i, g)),
            _ => {
                rep.failures.push(format!("edge {u}-{v} joins two circles of the same kind"));
                continue;
            }
        };
        is_edge.insert(p_idx);
        let (cp, cd) = (circle_at(pv), circle_at(dv));
        let corners: Vec<Point> = fam.dual[p_idx.1].touches.iter().filter(|(i, _)| *i == p_idx.0).map(|(_, p)| *p).collect();
        if corners.len() != 2 {
            rep.failures.push(format!("edge {u}-{v} has {} lune corners", corners.len()));
            continue;
        }
        for p in corners {
            let res = (power(p, &cp) / (cp.radius * cp.radius)).abs().max((power(p, &cd) / (cd.radius * cd.radius)).abs());
            rep.max_residual = rep.max_residual.max(res);
            if res > eps {
                rep.failures.push(format!("edge {u}-{v}: lune corner power residual {res:.3e}"));
            } else if poly.contains(p) && dominated(p, &[ru, rv]) {
                rep.failures.push(format!("edge {u}-{v}: lune corner dominated by another circle"));
            }
        }
    }
    // Extra adjacencies: a primal and a dual circle that cross at an
    // undominated interior point would share a power-diagram edge.
    for (i, a) in fam.primal.iter().enumerate() {
        for (g, d) in fam.dual.iter().enumerate() {
            if is_edge.contains(&(i, g)) {
                continue;
            }
            let Some(pts) = circle_intersections(a, &d.circle) else { continue };
            for p in pts {
                if poly.contains(p) && poly.dist_to_boundary(p) > eps && !dominated(p, &[FamilyRef::Primal(i), FamilyRef::Dual(g)]) {
                    rep.failures.push(format!("circle {i} and gap {g} meet at an undominated point"));
                }
            }
        }
    }
    rep
}
