pub mod polygon;
pub mod polyhedron;

pub use polygon::{ConvexPolygon, HalfPlane};
pub use polyhedron::{Constraint, HPolyhedron, Relation};
