//! Computational workbench for sets of the form `S = union over integer z of A_z`,
//! where each `A_z` is the x-projection of a slice of one closed convex set.
//!
//! The crate provides:
//! - a small exact/float geometry kernel (polygons, H-polyhedra, support
//!   functions, recession cones, Minkowski sums),
//! - a formulation model (index sets, slices, membership with witnesses),
//! - three built-in slice towers plus adversarial fixtures,
//! - probes that test structural consequences of convexity (support-value
//!   convexity, recession-cone constancy, volume concavity, shape classes).

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod formulation;
pub mod geometry;
pub mod linalg;
pub mod parallel;
pub mod report;
pub mod scalar;

pub use error::WorkbenchError;
pub use scalar::{ExtReal, Scalar, Tol};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, WorkbenchError>;
