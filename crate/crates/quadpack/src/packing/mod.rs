//! Circle packing of a polygonal domain into three- and four-sided gaps.

pub mod faces;
pub mod gap;
mod ring;
mod simplify;

pub use faces::{enumerate_faces, CornerKind, FaceSide, SideRef};
pub use gap::{
    classify_gap, classify_gap_tol, gap_circumcircle, gap_circumcircle_tol, goodness_margin, split_bad_gap,
    split_bad_gap_with, Gap, GapError, GapKind, GapSide, SideGeom, SplitStyle, Splitter,
};
pub use ring::{connect_holes, protect_vertices, replace_boundary_tangent, InsetFamily};
pub use simplify::{simplify_region, PlacedCircle, RegionArc};

use crate::geom::{
    dist_point_segment, line_param, tangency_point_tol, Circle, EdgeRef, GeomError, Normalization, Point, Polygon, Tolerances,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PackMode {
    /// Circles touch the boundary tangentially; interior circles stay clear
    /// of edges by a fixed fraction of their radius.
    BoundaryTangent,
    /// Circles meet the boundary only with their centers on it.
    BoundaryCentered,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PackOptions {
    pub mode: PackMode,
    /// Minimum separation from edges, as a fraction of radius.
    pub eps_sep: f64,
    /// Inset fraction for boundary-tangent replacement.
    pub eps_inset: f64,
    /// Circle cap; `None` means 100 per polygon vertex.
    pub max_circles: Option<usize>,
    pub tol: Tolerances,
}

impl PackOptions {
    pub fn new(mode: PackMode) -> Self {
        PackOptions { mode, eps_sep: 0.05, eps_inset: 0.25, max_circles: None, tol: Tolerances::default() }
    }

    pub fn validate(&self) -> Result<(), PackError> {
        if !(self.eps_sep > 0.0 && self.eps_sep < 1.0) {
            return Err(PackError::InvalidOptions(format!("eps_sep = {} outside (0, 1)", self.eps_sep)));
        }
        if !(self.eps_inset > 0.0 && self.eps_inset < 0.5) {
            return Err(PackError::InvalidOptions(format!("eps_inset = {} outside (0, 0.5)", self.eps_inset)));
        }
        self.tol.validate().map_err(|e| PackError::InvalidOptions(e.to_string()))
    }

    pub fn cap(&self, poly: &Polygon) -> usize {
        self.max_circles.unwrap_or(100 * poly.n())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    VertexProtection,
    HoleConnector,
    Simplifier,
    BoundaryReplacement,
    Auxiliary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PackedCircle {
    pub circle: Circle,
    pub tag: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tangency {
    pub a: usize,
    pub b: usize,
    pub point: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContactKind {
    CenteredOn,
    TangentTo,
    IgnoredCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryContact {
    pub circle: usize,
    pub edge: EdgeRef,
    pub kind: ContactKind,
    /// Touch point for tangent contacts, foot of the center otherwise.
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PackError {
    #[error("circle cap of {0} exceeded")]
    Overflow(usize),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("boundary layer could not be placed: {0}")]
    RingConflict(String),
    #[error("simplification failed: {0}")]
    Simplify(String),
    #[error("holes could not be connected: {0}")]
    HoleConnection(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Packing {
    pub mode: PackMode,
    pub domain: Polygon,
    pub circles: Vec<PackedCircle>,
    pub tangencies: Vec<Tangency>,
    pub boundary_contacts: Vec<BoundaryContact>,
    /// Pairs allowed to overlap (bad-gap splitters and their opposite circles).
    pub permitted_overlaps: Vec<(usize, usize)>,
}

/// Counts of gaps by kind, plus circle statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCensus {
    pub by_kind: BTreeMap<String, usize>,
    pub circles: usize,
    pub circles_per_vertex: f64,
}

impl Packing {
    pub(crate) fn empty(domain: &Polygon, mode: PackMode) -> Self {
        Packing {
            mode,
            domain: domain.clone(),
            circles: Vec::new(),
            tangencies: Vec::new(),
            boundary_contacts: Vec::new(),
            permitted_overlaps: Vec::new(),
        }
    }

    /// This packing carried back from the unit frame of `nz` to the
    /// coordinates it was normalized from.
    pub fn denormalized(&self, nz: &Normalization) -> Packing {
        let back = |p: Point| nz.inverse(p);
        Packing {
            mode: self.mode,
            domain: self.domain.map(back),
            circles: self
                .circles
                .iter()
                .map(|c| PackedCircle { circle: Circle { center: back(c.circle.center), radius: c.circle.radius / nz.scale }, tag: c.tag })
                .collect(),
            tangencies: self.tangencies.iter().map(|t| Tangency { point: back(t.point), ..*t }).collect(),
            boundary_contacts: self.boundary_contacts.iter().map(|b| BoundaryContact { point: back(b.point), ..*b }).collect(),
            permitted_overlaps: self.permitted_overlaps.clone(),
        }
    }

    pub fn geometry(&self) -> Vec<Circle> {
        self.circles.iter().map(|c| c.circle).collect()
    }

    pub(crate) fn add(&mut self, circle: Circle, tag: Provenance) -> usize {
        self.circles.push(PackedCircle { circle, tag });
        self.circles.len() - 1
    }

    /// Record a circle-circle tangency; fails when the circles do not touch.
    pub(crate) fn touch(&mut self, a: usize, b: usize, eps: f64) -> Result<Point, GeomError> {
        let p = tangency_point_tol(&self.circles[a].circle, &self.circles[b].circle, eps)?;
        self.tangencies.push(Tangency { a: a.min(b), b: a.max(b), point: p });
        Ok(p)
    }

    pub(crate) fn contact(&mut self, circle: usize, edge: EdgeRef, kind: ContactKind) {
        let c = self.circles[circle].circle;
        let (a, b) = self.domain.edge(edge);
        let t = line_param(c.center, a, b);
        let point = a.lerp(b, t);
        self.boundary_contacts.push(BoundaryContact { circle, edge, kind, point });
    }

    pub fn faces(&self) -> Vec<Vec<FaceSide>> {
        enumerate_faces(&self.domain, &self.geometry(), &self.tangencies, &self.boundary_contacts)
    }

    pub fn gaps(&self) -> Vec<Gap> {
        self.gaps_tol(Tolerances::default())
    }

    pub fn gaps_tol(&self, tol: Tolerances) -> Vec<Gap> {
        let geo = self.geometry();
        self.faces()
            .iter()
            .map(|f| {
                let g = Gap::from_face(f, &geo, |s| match s {
                    SideRef::Edge(e) => self.domain.edge(e),
                    SideRef::Circle(_) => unreachable!(),
                });
                Gap::from_sides(g.sides, tol)
            })
            .collect()
    }

    pub fn census(&self) -> GapCensus {
        let mut by_kind = BTreeMap::new();
        for g in self.gaps() {
            *by_kind.entry(format!("{:?}", g.kind)).or_insert(0) += 1;
        }
        GapCensus {
            by_kind,
            circles: self.circles.len(),
            circles_per_vertex: self.circles.len() as f64 / self.domain.n() as f64,
        }
    }

    fn overlap_permitted(&self, a: usize, b: usize) -> bool {
        self.permitted_overlaps.iter().any(|&(p, q)| (p, q) == (a, b) || (q, p) == (a, b))
    }

    /// Check the packing invariants; returns one message per violation.
    pub fn check(&self, opts: &PackOptions) -> Vec<String> {
        let eps = opts.tol.eps_rel;
        let mut out = Vec::new();
        let n = self.circles.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.circles[i].circle, self.circles[j].circle);
                if a.clearance(&b) < -eps * a.radius.max(b.radius) && !self.overlap_permitted(i, j) {
                    out.push(format!("circles {i} and {j} overlap by {:e}", -a.clearance(&b)));
                }
            }
        }
        for t in &self.tangencies {
            let (a, b) = (self.circles[t.a].circle, self.circles[t.b].circle);
            if tangency_point_tol(&a, &b, eps).is_err() {
                out.push(format!("tangency {}-{} not within tolerance", t.a, t.b));
            }
            if self.mode == PackMode::BoundaryCentered {
                let d = self.domain.dist_to_boundary(t.point);
                if d <= eps * a.radius.max(b.radius) {
                    out.push(format!("tangency {}-{} lies on the boundary", t.a, t.b));
                }
            }
        }
        let touching: std::collections::HashSet<(usize, EdgeRef)> =
            self.boundary_contacts.iter().map(|c| (c.circle, c.edge)).collect();
        for (i, pc) in self.circles.iter().enumerate() {
            let c = pc.circle;
            for (e, a, b) in self.domain.edges() {
                if touching.contains(&(i, e)) {
                    continue;
                }
                let gap = dist_point_segment(c.center, a, b) - c.radius;
                let need = match self.mode {
                    PackMode::BoundaryTangent => opts.eps_sep * c.radius,
                    PackMode::BoundaryCentered => 0.0,
                };
                if gap < need - eps * c.radius {
                    out.push(format!("circle {i} is within {gap:e} of edge {e:?}"));
                }
            }
        }
        for g in self.gaps_tol(opts.tol) {
            if g.sides.len() > 4 {
                out.push(format!("gap with {} sides", g.sides.len()));
            }
            if g.all_arcs() {
                if let Err(e) = gap_circumcircle_tol(&g, opts.tol) {
                    out.push(format!("gap circumcircle: {e}"));
                }
            }
        }
        out
    }
}

/// Build a packing whose gaps all have three or four sides.
pub fn pack(poly: &Polygon, opts: &PackOptions) -> Result<Packing, PackError> {
    opts.validate()?;
    let mut last = None;
    let mut shrink = 1.0;
    for _ in 0..10 {
        let ring = match opts.mode {
            PackMode::BoundaryTangent => ring::tangent_ring(poly, shrink, opts),
            PackMode::BoundaryCentered => ring::centered_ring(poly, shrink, opts),
        };
        let result = ring.and_then(|mut pk| {
            ring::bridge_holes(&mut pk, opts)?;
            simplify::simplify_packing(&mut pk, opts)?;
            Ok(pk)
        });
        match result {
            Ok(pk) => return Ok(pk),
            Err(e @ (PackError::RingConflict(_) | PackError::HoleConnection(_))) => {
                last = Some(e);
                shrink *= 0.7;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(PackError::RingConflict("no attempt succeeded".into())))
}
