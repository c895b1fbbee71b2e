//! Incremental mesh assembly with vertices deduplicated by combinatorial
//! identity rather than by coordinates.

use super::QuadMesh;
use crate::geom::{signed_area, EdgeRef, Point, Polygon};
use std::collections::HashMap;

/// What a mesh vertex stands for. Two quads that name the same key share the
/// vertex, which is how meshers guarantee conformity without snapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKey {
    /// Center of packing circle `i`.
    Center(usize),
    /// Tangency of circles `a < b`.
    Tangency(usize, usize),
    /// Contact of a circle with a domain edge.
    Contact(usize, EdgeRef),
    /// Polygon vertex `(ring, index)`.
    Corner(usize, usize),
    /// Site (circumcenter) of gap `g`.
    Site(usize),
    /// Point `k` private to construction `group`.
    Aux(usize, usize),
    /// Midpoint of the edge between mesh vertices `a < b`.
    Mid(usize, usize),
    /// Perpendicular foot on the side between vertices `a < b`.
    Foot(usize, usize),
    /// Point `k` private to element `elem`.
    Inner(usize, usize),
    /// Vertex `i` of a source mesh being refined.
    Vertex(usize),
}

impl VertexKey {
    pub fn tangency(a: usize, b: usize) -> Self {
        VertexKey::Tangency(a.min(b), a.max(b))
    }
    pub fn mid(a: usize, b: usize) -> Self {
        VertexKey::Mid(a.min(b), a.max(b))
    }
    pub fn foot(a: usize, b: usize) -> Self {
        VertexKey::Foot(a.min(b), a.max(b))
    }
}

#[derive(Debug, Default)]
pub struct MeshBuilder {
    vertices: Vec<Point>,
    index: HashMap<VertexKey, usize>,
    quads: Vec<[usize; 4]>,
}

impl MeshBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of the vertex for `key`, created at `p` on first use.
    pub fn vertex(&mut self, key: VertexKey, p: Point) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        self.vertices.push(p);
        self.index.insert(key, self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    pub fn lookup(&self, key: VertexKey) -> Option<usize> {
        self.index.get(&key).copied()
    }

    pub fn point(&self, i: usize) -> Point {
        self.vertices[i]
    }

    /// Add a quad, reversing it if it was given clockwise.
    pub fn quad(&mut self, q: [usize; 4]) {
        let p = q.map(|i| self.vertices[i]);
        if signed_area(&p) < 0.0 {
            self.quads.push([q[0], q[3], q[2], q[1]]);
        } else {
            self.quads.push(q);
        }
    }

    pub fn quad_count(&self) -> usize {
        self.quads.len()
    }

    /// Finish, flagging vertices that sit on the domain boundary.
    pub fn finish(self, poly: &Polygon) -> QuadMesh {
        let tol = 1e-9 * poly.diameter();
        let boundary = self.vertices.iter().map(|p| poly.dist_to_boundary(*p) <= tol).collect();
        QuadMesh { vertices: self.vertices, boundary, quads: self.quads }
    }
}
