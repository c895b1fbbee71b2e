//! Quads with two opposite right angles: each cell of a site-centered
//! partition is cut from its site to the perpendicular feet on its sides.

use super::{voronoi::mesh_voronoi_detailed, MeshingError};
use crate::geom::{line_param, signed_area, Point, Polygon};
use crate::mesh::{MeshBuilder, QuadMesh, VertexKey};
use crate::packing::Packing;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A polygonal partition in which every cell owns a site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteCells {
    pub vertices: Vec<Point>,
    /// Vertex indices of each cell, counterclockwise.
    pub cells: Vec<Vec<usize>>,
    pub sites: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RightAngleMesh {
    pub mesh: QuadMesh,
    /// Largest distance between the two feet computed for a shared side,
    /// relative to the side length.
    pub foot_residual: f64,
    pub cells: SiteCells,
    pub removed_sites: usize,
}

impl SiteCells {
    /// Cells of a Voronoi mesh: the quads, with the tangency points as sites.
    pub fn from_quads(mesh: &QuadMesh, sites: &[Point]) -> SiteCells {
        SiteCells { vertices: mesh.vertices.clone(), cells: mesh.quads.iter().map(|q| q.to_vec()).collect(), sites: sites.to_vec() }
    }

    fn sides(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let v = &self.cells[c];
        (0..v.len()).map(move |k| (v[k], v[(k + 1) % v.len()]))
    }

    fn edge_cells(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for c in 0..self.cells.len() {
            for (a, b) in self.sides(c) {
                m.entry((a.min(b), a.max(b))).or_default().push(c);
            }
        }
        m
    }

    fn area(&self, c: usize) -> f64 {
        signed_area(&self.cells[c].iter().map(|&i| self.vertices[i]).collect::<Vec<_>>())
    }
}

const FOOT_EPS: f64 = 1e-9;

/// Feet parameters of the site of cell `c`; all must lie strictly inside
/// their sides.
fn feet_ok(cells: &SiteCells, c: usize) -> bool {
    let s = cells.sites[c];
    cells.sides(c).all(|(a, b)| {
        let t = line_param(s, cells.vertices[a], cells.vertices[b]);
        t > FOOT_EPS && t < 1.0 - FOOT_EPS
    })
}

fn foot(s: Point, a: Point, b: Point) -> Point {
    a.lerp(b, line_param(s, a, b))
}

/// Merge of cells `c` and `d` across their single shared side, or `None`
/// when they share more or less than one side.
fn merged(cells: &SiteCells, c: usize, d: usize) -> Option<Vec<usize>> {
    let vc = &cells.cells[c];
    let vd = &cells.cells[d];
    let shared: Vec<(usize, usize)> = cells.sides(c).filter(|&(a, b)| cells.sides(d).any(|(x, y)| x == b && y == a)).collect();
    if shared.len() != 1 {
        return None;
    }
    let (a, b) = shared[0];
    // Walk c from b around to a, then d from a around to b.
    let ic = vc.iter().position(|&v| v == b)?;
    let id = vd.iter().position(|&v| v == a)?;
    let mut out: Vec<usize> = (0..vc.len()).map(|k| vc[(ic + k) % vc.len()]).take_while(|&v| v != a).collect();
    out.extend((0..vd.len()).map(|k| vd[(id + k) % vd.len()]).take_while(|&v| v != b));
    Some(out)
}

/// Drop vertices where the boundary goes straight on, if no other cell
/// uses them. A straight vertex used elsewhere would leave a hanging node.
fn drop_straight(cells: &SiteCells, poly: Vec<usize>, used_elsewhere: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = poly.len();
    let mut keep = Vec::with_capacity(n);
    for k in 0..n {
        let (p, v, q) = (cells.vertices[poly[(k + n - 1) % n]], cells.vertices[poly[k]], cells.vertices[poly[(k + 1) % n]]);
        let turn = (v - p).cross(q - v);
        let straight = turn.abs() <= 1e-12 * (v - p).norm() * (q - v).norm();
        if straight {
            if used_elsewhere(poly[k]) {
                return None;
            }
        } else if turn < 0.0 {
            return None;
        } else {
            keep.push(poly[k]);
        }
    }
    Some(keep)
}

/// Remove sites greedily, smallest cells first, by merging a cell into a
/// neighbor across one shared side whenever the neighbor's site still has
/// interior feet on every side of the union and the feet it shares with
/// other cells stay put. Returns the coarser cells and the number removed.
pub fn simplify_sites(cells: &SiteCells) -> (SiteCells, usize) {
    let mut cur = cells.clone();
    let mut removed = 0;
    let mut alive: Vec<bool> = vec![true; cur.cells.len()];
    let mut order: Vec<usize> = (0..cur.cells.len()).collect();
    order.sort_by(|&a, &b| cur.area(a).total_cmp(&cur.area(b)).then(a.cmp(&b)));
    for &c in &order {
        if !alive[c] {
            continue;
        }
        let edges = cur.edge_cells();
        let mut nbrs: BTreeSet<usize> = BTreeSet::new();
        for (a, b) in cur.sides(c) {
            for &d in &edges[&(a.min(b), a.max(b))] {
                if d != c && alive[d] {
                    nbrs.insert(d);
                }
            }
        }
        for d in nbrs {
            let Some(raw) = merged(&cur, d, c) else { continue };
            let users = |v: usize| (0..cur.cells.len()).any(|o| o != c && o != d && alive[o] && cur.cells[o].contains(&v));
            let Some(poly) = drop_straight(&cur, raw, &users) else { continue };
            let mut trial = cur.clone();
            trial.cells[d] = poly;
            if !feet_ok(&trial, d) || !shared_feet_agree(&trial, d, &alive, c) {
                continue;
            }
            trial.cells[c].clear();
            cur = trial;
            alive[c] = false;
            removed += 1;
            break;
        }
    }
    let keep: Vec<usize> = (0..cur.cells.len()).filter(|&c| alive[c]).collect();
    let out = SiteCells {
        vertices: cur.vertices.clone(),
        cells: keep.iter().map(|&c| cur.cells[c].clone()).collect(),
        sites: keep.iter().map(|&c| cur.sites[c]).collect(),
    };
    (out, removed)
}

/// Every side of cell `d` shared with a live neighbor must get the same foot
/// from both sites.
fn shared_feet_agree(cells: &SiteCells, d: usize, alive: &[bool], skip: usize) -> bool {
    let sd = cells.sites[d];
    cells.sides(d).all(|(a, b)| {
        (0..cells.cells.len()).filter(|&o| o != d && o != skip && alive[o]).all(|o| {
            if !cells.sides(o).any(|(x, y)| x == b && y == a) {
                return true;
            }
            let (pa, pb) = (cells.vertices[a], cells.vertices[b]);
            foot(sd, pa, pb).dist(foot(cells.sites[o], pa, pb)) <= 1e-9 * pa.dist(pb)
        })
    })
}

/// Split every cell into one quad per corner: corner, foot on the next side,
/// site, foot on the previous side.
pub fn subdivide_cells(cells: &SiteCells, poly: &Polygon) -> Result<(QuadMesh, f64), MeshingError> {
    let mut b = MeshBuilder::new();
    let mut residual: f64 = 0.0;
    for (c, vs) in cells.cells.iter().enumerate() {
        let s = cells.sites[c];
        let site = b.vertex(VertexKey::Inner(c, 0), s);
        let n = vs.len();
        let mut feet = Vec::with_capacity(n);
        for k in 0..n {
            let (pa, pb) = (cells.vertices[vs[k]], cells.vertices[vs[(k + 1) % n]]);
            let t = line_param(s, pa, pb);
            if !(t > FOOT_EPS && t < 1.0 - FOOT_EPS) {
                return Err(MeshingError::FootOutsideEdge { cell: c, side: k, t });
            }
            let f = pa.lerp(pb, t);
            let key = VertexKey::foot(vs[k], vs[(k + 1) % n]);
            if let Some(i) = b.lookup(key) {
                residual = residual.max(b.point(i).dist(f) / pa.dist(pb));
            }
            feet.push(b.vertex(key, f));
        }
        for k in 0..n {
            let v = vs[(k + 1) % n];
            let corner = b.vertex(VertexKey::Vertex(v), cells.vertices[v]);
            b.quad([corner, feet[(k + 1) % n], site, feet[k]]);
        }
    }
    Ok((b.finish(poly), residual))
}

/// Right-angle mesh of a boundary-centered packing, built on its Voronoi mesh.
pub fn mesh_opposite_right_angles(pk: &Packing, poly: &Polygon) -> Result<QuadMesh, MeshingError> {
    Ok(mesh_opposite_right_angles_detailed(pk, poly, false)?.mesh)
}

pub fn mesh_opposite_right_angles_detailed(pk: &Packing, poly: &Polygon, simplify: bool) -> Result<RightAngleMesh, MeshingError> {
    let vm = mesh_voronoi_detailed(pk, poly)?;
    let base = SiteCells::from_quads(&vm.mesh, &vm.generators);
    let (cells, removed_sites) = if simplify { simplify_sites(&base) } else { (base, 0) };
    let (mesh, foot_residual) = subdivide_cells(&cells, poly)?;
    Ok(RightAngleMesh { mesh, foot_residual, cells, removed_sites })
}
