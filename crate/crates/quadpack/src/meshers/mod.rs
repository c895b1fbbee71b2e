//! Quadrilateral meshers built on circle packings.

pub mod kite;
pub mod maxangle;
pub mod rightangle;
pub mod voronoi;

pub use kite::{mesh_arc_gap, mesh_kites, mesh_kites_detailed, mesh_one_boundary_gap, mesh_two_boundary_gap, BoundaryFill, KiteCensus, KiteMesh};
pub use maxangle::{mesh_120, mesh_120_from_kites, subdivide_kite_120, KiteCase};
pub use rightangle::{mesh_opposite_right_angles, mesh_opposite_right_angles_detailed, simplify_sites, RightAngleMesh, SiteCells};
pub use voronoi::{FamilyRef, mesh_voronoi, mesh_voronoi_detailed, power_duality_check, DualityReport, PowerFamily, VoronoiMesh};

use crate::geom::{signed_area, tangency_point, Circle, GeomError, Point};
use crate::mesh::VertexKey;
use crate::packing::{
    faces::{CornerKind, SideRef},
    Gap, GapError, PackError,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshingError {
    #[error("packing was built in the wrong mode for this mesher")]
    InvalidPackingMode,
    #[error("gap {gap} matches no meshing case: {detail}")]
    UnhandledGap { gap: usize, detail: String },
    #[error("cell of tangency {cell} is degenerate: {detail}")]
    DegenerateCell { cell: usize, detail: String },
    #[error("boundary gap {gap} stays bad after repair")]
    BadBoundaryGap { gap: usize },
    #[error("perpendicular foot of cell {cell} misses side {side} (parameter {t:.3e})")]
    FootOutsideEdge { cell: usize, side: usize, t: f64 },
    #[error("gap aspect ratio {0:.3} is below the construction threshold")]
    ThresholdNotMet(f64),
    #[error("boundary gap too flat to fill: {0}")]
    AspectViolation(String),
    #[error("gap shape not supported: {0}")]
    Unsupported(String),
    #[error("quad is not a kite")]
    NotAKite,
    #[error("subdivision reaches {0:.9} degrees")]
    AngleTargetMissed(f64),
    #[error(transparent)]
    Pack(#[from] PackError),
    #[error(transparent)]
    Gap(#[from] GapError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A mesh vertex before insertion: its identity and position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct V {
    pub key: VertexKey,
    pub p: Point,
}

impl V {
    pub fn new(key: VertexKey, p: Point) -> Self {
        V { key, p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum LSide {
    Arc { circle: Circle, center: V },
    Edge,
}

/// A gap detached from its packing: sides in walk order, corner `k` at the
/// start of side `k`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LGap {
    pub sides: Vec<LSide>,
    pub corners: Vec<V>,
}

impl LGap {
    pub fn arc(circle: Circle, key: VertexKey) -> LSide {
        LSide::Arc { circle, center: V::new(key, circle.center) }
    }

    pub fn n(&self) -> usize {
        self.sides.len()
    }

    pub fn circle(&self, k: usize) -> Option<Circle> {
        match self.sides[k % self.n()] {
            LSide::Arc { circle, .. } => Some(circle),
            LSide::Edge => None,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        self.corners.iter().map(|c| c.p).collect()
    }

    /// The same gap walked counterclockwise around its interior.
    pub fn ccw(mut self) -> Self {
        if signed_area(&self.points()) < 0.0 {
            let n = self.n();
            let corners = (0..n).map(|k| self.corners[(n - k) % n]).collect();
            self.sides.reverse();
            self.corners = corners;
        }
        self
    }

    /// Kites from every arc side to `hub`.
    pub fn fan(&self, hub: V, out: &mut Vec<[V; 4]>) {
        let n = self.n();
        for k in 0..n {
            if let LSide::Arc { center, .. } = self.sides[k] {
                out.push([center, self.corners[k], hub, self.corners[(k + 1) % n]]);
            }
        }
    }

    /// Packing-free gap value for the classification and splitting routines;
    /// circle ids are side indices.
    pub fn to_gap(&self) -> Result<Gap, GeomError> {
        let circles: Vec<(usize, Circle)> = (0..self.n()).map(|k| (k, self.circle(k).expect("all arcs"))).collect();
        Gap::from_circles(&circles)
    }
}

/// Key of the corner at the start of side `k` of a packing gap.
pub(crate) fn corner_key(g: &Gap, k: usize) -> Option<VertexKey> {
    let n = g.sides.len();
    let prev = g.sides[(k + n - 1) % n].object;
    let cur = g.sides[k].object;
    match (g.sides[k].corner, prev, cur) {
        (CornerKind::Tangency, SideRef::Circle(a), SideRef::Circle(b)) => Some(VertexKey::tangency(a, b)),
        (CornerKind::EdgeTangency, SideRef::Circle(c), SideRef::Edge(e))
        | (CornerKind::EdgeTangency, SideRef::Edge(e), SideRef::Circle(c)) => Some(VertexKey::Contact(c, e)),
        (CornerKind::Vertex, _, SideRef::Edge(e)) => Some(VertexKey::Corner(e.ring, e.index)),
        _ => None,
    }
}

/// Packing gap as an [`LGap`] whose corners carry packing-level keys.
pub(crate) fn lgap_of(g: &Gap, gi: usize) -> Result<LGap, MeshingError> {
    let n = g.sides.len();
    let mut sides = Vec::with_capacity(n);
    let mut corners = Vec::with_capacity(n);
    for k in 0..n {
        let key = corner_key(g, k).ok_or_else(|| MeshingError::UnhandledGap {
            gap: gi,
            detail: format!("corner {k} of kind {:?} has no mesh vertex", g.sides[k].corner),
        })?;
        corners.push(V::new(key, g.sides[k].start));
        sides.push(match (g.sides[k].object, g.sides[k].circle()) {
            (SideRef::Circle(i), Some(c)) => LGap::arc(c, VertexKey::Center(i)),
            _ => LSide::Edge,
        });
    }
    Ok(LGap { sides, corners })
}

/// Tangency point of two circles, with a consistent message on failure.
pub(crate) fn touch(a: &Circle, b: &Circle) -> Result<Point, MeshingError> {
    Ok(tangency_point(a, b)?)
}
