//! Testable necessary conditions for a family of slices to come from one
//! convex set, plus shape-equivalence classifiers for slice families.
//!
//! The probes never certify that a set *is* representable; they hunt for
//! witnesses that a proposed family cannot be, by checking consequences of
//! convexity: slice infima are convex across indices, their finiteness
//! domain and recession cones are constant on the interior of the index
//! set, and root-volumes are concave.

pub mod grid;
pub mod probes;
pub mod shapes;

pub use grid::DirectionGrid;
pub use probes::{
    cone_constancy_probe, domain_equality_probe, fc_infimum, interior_lattice_pairs,
    interior_lattice_samples, midpoint_convexity_probe, volume_concavity_probe,
};
pub use shapes::{
    affine_equivalent, combinatorially_equivalent, homothety_between, shape_classes,
    translation_classes, translation_equivalent, ShapeNotion,
};
