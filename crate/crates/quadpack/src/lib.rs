//! Circle packing of polygonal domains and guaranteed-quality quadrilateral meshing.
//!
//! [`packing::pack`] fills a polygon with tangent circles whose gaps have at
//! most four sides. The meshers in [`meshers`] turn such a packing into
//! quadrilateral meshes: Voronoi cells around tangency points, their
//! subdivision into quads with two opposite right angles, kites, and a
//! refinement of the kites with no angle above 120 degrees. [`pipeline`]
//! runs the whole chain with validation, as the `quadpack` binary does.

// Comparisons such as `!(x > 0.0)` are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod fixtures;
pub mod geom;
pub mod io;
pub mod mesh;
pub mod meshers;
pub mod packing;
pub mod pipeline;
pub mod svg;
