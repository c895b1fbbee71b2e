//! Enumeration of the residual regions ("faces") of a packing.
//!
//! Every contact becomes a pair of linked ports. A face is traced by walking
//! clockwise along circles and forward along edges (domain on the left),
//! switching objects at each departure port.

use super::{BoundaryContact, ContactKind, Tangency};
use crate::geom::{line_param, Circle, EdgeRef, Point, Polygon};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum SideRef {
    Circle(usize),
    Edge(EdgeRef),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CornerKind {
    /// Two circles touching.
    Tangency,
    /// A circle touching an edge.
    EdgeTangency,
    /// A boundary-centered circle crossing its edge.
    Crossing,
    /// A polygon vertex between two edges.
    Vertex,
}

/// One walk step of a face: an arc of a circle or a piece of an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceSide {
    pub object: SideRef,
    pub start: Point,
    pub end: Point,
    /// Corner at `start`, shared with the previous side.
    pub corner: CornerKind,
}

#[derive(Clone, Copy)]
struct Port {
    obj: usize,
    pos: f64,
    point: Point,
    partner: usize,
    arrive: bool,
    depart: bool,
    corner: CornerKind,
}

struct Graph {
    objects: Vec<SideRef>,
    ports: Vec<Port>,
    order: Vec<Vec<usize>>,
}

impl Graph {
    fn new(poly: &Polygon, circles: &[Circle]) -> (Self, HashMap<SideRef, usize>) {
        let mut objects = Vec::new();
        let mut index = HashMap::new();
        for i in 0..circles.len() {
            index.insert(SideRef::Circle(i), objects.len());
            objects.push(SideRef::Circle(i));
        }
        for (e, _, _) in poly.edges() {
            index.insert(SideRef::Edge(e), objects.len());
            objects.push(SideRef::Edge(e));
        }
        let order = vec![Vec::new(); objects.len()];
        (Graph { objects, ports: Vec::new(), order }, index)
    }

    /// Add a linked port pair; `a_to_b` / `b_to_a` say which directions are walkable.
    #[allow(clippy::too_many_arguments)]
    fn link(&mut self, a: (usize, f64), b: (usize, f64), point: Point, a_to_b: bool, b_to_a: bool, corner: CornerKind) {
        let ia = self.ports.len();
        let ib = ia + 1;
        self.ports.push(Port { obj: a.0, pos: a.1, point, partner: ib, arrive: b_to_a, depart: a_to_b, corner });
        self.ports.push(Port { obj: b.0, pos: b.1, point, partner: ia, arrive: a_to_b, depart: b_to_a, corner });
    }

    fn finish(&mut self) {
        for (i, p) in self.ports.iter().enumerate() {
            self.order[p.obj].push(i);
        }
        let ports = &self.ports;
        for list in &mut self.order {
            list.sort_by(|&a, &b| ports[a].pos.total_cmp(&ports[b].pos));
        }
    }

    fn next_departure(&self, arrival: usize) -> Option<usize> {
        let p = &self.ports[arrival];
        let list = &self.order[p.obj];
        let k = list.iter().position(|&i| i == arrival)?;
        let cyclic = matches!(self.objects[p.obj], SideRef::Circle(_));
        let n = list.len();
        for step in 1..=n {
            let j = k + step;
            if !cyclic && j >= n {
                return None;
            }
            let q = list[j % n];
            if self.ports[q].depart {
                return Some(q);
            }
        }
        None
    }
}

/// Clockwise walk position for a point on a circle.
fn cw_pos(c: &Circle, p: Point) -> f64 {
    -(p - c.center).angle()
}

/// Trace all faces. Contacts with `IgnoredCrossing` are skipped.
pub fn enumerate_faces(
    poly: &Polygon,
    circles: &[Circle],
    tangencies: &[Tangency],
    contacts: &[BoundaryContact],
) -> Vec<Vec<FaceSide>> {
    let (mut g, idx) = Graph::new(poly, circles);
    for t in tangencies {
        let (ca, cb) = (&circles[t.a], &circles[t.b]);
        let oa = idx[&SideRef::Circle(t.a)];
        let ob = idx[&SideRef::Circle(t.b)];
        g.link((oa, cw_pos(ca, t.point)), (ob, cw_pos(cb, t.point)), t.point, true, true, CornerKind::Tangency);
    }
    for bc in contacts {
        let c = &circles[bc.circle];
        let oc = idx[&SideRef::Circle(bc.circle)];
        let oe = idx[&SideRef::Edge(bc.edge)];
        let (a, b) = poly.edge(bc.edge);
        let len = a.dist(b);
        match bc.kind {
            ContactKind::TangentTo => {
                let s = line_param(bc.point, a, b) * len;
                g.link((oe, s), (oc, cw_pos(c, bc.point)), bc.point, true, true, CornerKind::EdgeTangency);
            }
            ContactKind::CenteredOn => {
                let dir = (b - a) / len;
                let sc = line_param(c.center, a, b) * len;
                let tol = 1e-12 * len;
                // Entering the disk from the edge, then leaving it back onto the edge.
                let s_in = sc - c.radius;
                if s_in > -tol && s_in < len + tol {
                    let p = c.center - dir * c.radius;
                    g.link((oe, s_in), (oc, cw_pos(c, p)), p, true, false, CornerKind::Crossing);
                }
                let s_out = sc + c.radius;
                if s_out > -tol && s_out < len + tol {
                    let p = c.center + dir * c.radius;
                    g.link((oc, cw_pos(c, p)), (oe, s_out), p, true, false, CornerKind::Crossing);
                }
            }
            ContactKind::IgnoredCrossing => {}
        }
    }
    // Polygon vertices not covered by any disk connect consecutive edges.
    for (e, a, b) in poly.edges() {
        let covered = circles.iter().any(|c| c.center.dist(b) < c.radius * (1.0 - 1e-12));
        if covered {
            continue;
        }
        let next = poly.next_edge(e);
        let len = a.dist(b);
        g.link((idx[&SideRef::Edge(e)], len), (idx[&SideRef::Edge(next)], 0.0), b, true, false, CornerKind::Vertex);
    }
    g.finish();

    let mut visited = vec![false; g.ports.len()];
    let mut faces = Vec::new();
    for start in 0..g.ports.len() {
        if visited[start] || !g.ports[start].arrive {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = start;
        let mut ok = true;
        loop {
            visited[cur] = true;
            let Some(dep) = g.next_departure(cur) else {
                ok = false;
                break;
            };
            let p = g.ports[cur];
            face.push(FaceSide {
                object: g.objects[p.obj],
                start: p.point,
                end: g.ports[dep].point,
                corner: p.corner,
            });
            cur = g.ports[dep].partner;
            if cur == start {
                break;
            }
            if visited[cur] || face.len() > g.ports.len() {
                ok = false;
                break;
            }
        }
        if ok {
            faces.push(face);
        }
    }
    faces
}
