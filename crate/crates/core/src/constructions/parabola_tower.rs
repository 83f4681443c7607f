//! A four-dimensional tower of slices indexed by lattice points under a
//! parabola, built so that all interior slices share one wedge recession
//! cone while every boundary slice recedes along its own ray.
//!
//! The underlying convex set `M` lives in (x, y, z)-space with x in R^4, a
//! single auxiliary variable y, and z in R^2:
//!
//! ```text
//!   (x4 - (c/(1+c)) x3)^2  <=  (z2 - z1^2 + (z1 - c)^2) y   for every integer c >= 0
//!   0 <= x4 <= x3,   x1 = z1,   x2 = z2,   0 <= z1,   z1^2 <= z2
//! ```
//!
//! Membership reduces to finitely many of the quadratic constraints. The
//! residual on the left never exceeds `B = max{(x4 - x3)^2, x4^2}` because
//! the coefficient c/(1+c) sweeps [0, 1), while the slack coefficient on the
//! right grows like (z1 - c)^2. For y > 0, once an integer c* >= z1
//! satisfies (c* - z1)^2 y >= B, every constraint beyond c* is slack, so
//! checking c = 0..c* decides membership. For y = 0 the residual must vanish
//! at every c, which forces x3 = x4 = 0 (c = 0 pins x4, c = 1 then pins x3).
//! For y < 0 some slack coefficient is strictly positive and the constraint
//! there is unsatisfiable.
//!
//! At an integer index the slice in x-space has a closed form: interior
//! indices (z1^2 < z2) give the wedge `{x1 = z1, x2 = z2, 0 <= x4 <= x3}`,
//! boundary indices z = (k, k^2) additionally pin `x4 = (k/(1+k)) x3`, and
//! `y = B` witnesses both. Boundary indices with fractional first coordinate
//! admit no constraint at c = z1, so no finite family pins the ratio; the
//! slice is refused rather than guessed (the induced union only consults
//! integer indices, so nothing downstream depends on it).

use crate::error::WorkbenchError;
use crate::formulation::{Dims, Formulation, LatticeBox, RegionClass, SliceResult};
use crate::geometry::{Constraint, HPolyhedron};
use crate::scalar::{lattice_to_scalars, Scalar, Tol};
use crate::Result;
use std::cmp::Ordering;

/// The tower formulation; stateless, the whole family is fixed.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParabolaTower;

/// Slack coefficient of the constraint indexed by `c`:
/// `z2 - z1^2 + (z1 - c)^2`. Nonnegative on the index set, zero exactly at
/// the boundary index z = (c, c^2), and at least 1 at every other integer
/// index.
pub fn slack_coefficient(z: &[Scalar], c: u64) -> Scalar {
    let (z1, z2) = (&z[0], &z[1]);
    let gap = z1 - &Scalar::from_int(c as i64);
    &(z2 - &(z1 * z1)) + &(&gap * &gap)
}

/// Residual of the constraint indexed by `c`: `(x4 - (c/(1+c)) x3)^2`.
pub fn residual(x3: &Scalar, x4: &Scalar, c: u64) -> Scalar {
    let coef = Scalar::from_ratio(c as i64, c as i64 + 1);
    let dev = x4 - &(&coef * x3);
    &dev * &dev
}

/// Uniform bound on the residual over all `c`: `max{(x4 - x3)^2, x4^2}`.
/// Also the membership witness for y at integer indices.
pub fn residual_bound(x3: &Scalar, x4: &Scalar) -> Scalar {
    let dev = x4 - x3;
    let far = &dev * &dev;
    let near = x4 * x4;
    if far.raw_cmp(&near) == Ordering::Less {
        near
    } else {
        far
    }
}

/// Primitive integer direction of the recession ray of the boundary slice
/// at z = (k, k^2): (0, 0, 1+k, k). Consecutive k give pairwise distinct
/// rays, which is the point of the construction.
pub fn boundary_ray(k: u64) -> Vec<i64> {
    vec![0, 0, k as i64 + 1, k as i64]
}

impl ParabolaTower {
    fn base_constraints_hold(x: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        let zero = Scalar::zero();
        let (z1, z2) = (&z[0], &z[1]);
        zero.le_within(z1, tol)
            && (z1 * z1).le_within(z2, tol)
            && x[0].eq_within(z1, tol)
            && x[1].eq_within(z2, tol)
            && zero.le_within(&x[3], tol)
            && x[3].le_within(&x[2], tol)
    }

    /// Smallest convenient integer c* >= max(z1, 0) with (c* - z1)^2 y >= B.
    /// Beyond c*, residual <= B <= (c - z1)^2 y <= slack * y, so only
    /// c = 0..c* need explicit checking.
    fn constraint_horizon(z1: &Scalar, y: &Scalar, bound: &Scalar) -> u64 {
        let estimate = z1.to_f64().max(0.0) + (bound.to_f64() / y.to_f64()).max(0.0).sqrt();
        let mut c = if estimate.is_finite() {
            (estimate.floor() as i64 - 2).max(0)
        } else {
            0
        };
        loop {
            let gap = &Scalar::from_int(c) - z1;
            let cleared = gap.raw_cmp(&Scalar::zero()) != Ordering::Less
                && (&(&gap * &gap) * y).raw_cmp(bound) != Ordering::Less;
            if cleared {
                return c as u64;
            }
            c += 1;
        }
    }

    /// Closed-form membership in the slice at an integer index: the base
    /// constraints, plus the pinned ratio (1+z1) x4 = z1 x3 when the index
    /// lies on the parabola. Agrees with `member_m` at the witness
    /// y = residual_bound(x3, x4); tests exercise the equivalence.
    pub fn closed_form_member(&self, x: &[Scalar], z: &[i64], tol: Tol) -> bool {
        if x.len() != 4 || z.len() != 2 {
            return false;
        }
        let (k1, k2) = (z[0] as i128, z[1] as i128);
        if z[0] < 0 || k1 * k1 > k2 {
            return false;
        }
        if !Self::base_constraints_hold(x, &lattice_to_scalars(z), tol) {
            return false;
        }
        if k1 * k1 == k2 {
            let lhs = &Scalar::from_int(z[0] + 1) * &x[3];
            let rhs = &Scalar::from_int(z[0]) * &x[2];
            return lhs.eq_within(&rhs, tol);
        }
        true
    }

    /// Recession cone of the slice at `z`. Interior indices all share the
    /// wedge `{x1 = x2 = 0, 0 <= x4 <= x3}`; the boundary index (k, k^2)
    /// yields the single ray spanned by `boundary_ray(k)`.
    pub fn recession_cone(&self, z: &[Scalar], tol: Tol) -> Result<HPolyhedron> {
        let slice = self.slice(z, tol)?;
        match slice.as_polyhedron() {
            Some(h) => h.recession_cone(tol),
            None => Err(WorkbenchError::Infeasible(format!(
                "no slice at index ({}, {})",
                z[0], z[1]
            ))),
        }
    }
}

impl Formulation for ParabolaTower {
    fn name(&self) -> &'static str {
        // Stable artifact id; part of the command-line contract.
        "lemma2"
    }

    fn dims(&self) -> Dims {
        Dims { n: 4, p: 1, d: 2 }
    }

    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 4 || y.len() != 1 || z.len() != 2 {
            return false;
        }
        if !Self::base_constraints_hold(x, z, tol) {
            return false;
        }
        match y[0].sign_within(tol) {
            Ordering::Less => false,
            Ordering::Equal => x[2].is_zero_within(tol) && x[3].is_zero_within(tol),
            Ordering::Greater => {
                let bound = residual_bound(&x[2], &x[3]);
                let horizon = Self::constraint_horizon(&z[0], &y[0], &bound);
                (0..=horizon).all(|c| {
                    let rhs = &slack_coefficient(z, c) * &y[0];
                    residual(&x[2], &x[3], c).le_within(&rhs, tol)
                })
            }
        }
    }

    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool {
        z.len() == 2
            && Scalar::zero().le_within(&z[0], tol)
            && (&z[0] * &z[0]).le_within(&z[1], tol)
    }

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        if !self.index_contains(z, tol) {
            return RegionClass::Outside;
        }
        // Both defining constraints can be active: the parabola and the
        // z1 >= 0 halfplane edge.
        if (&z[0] * &z[0]).eq_within(&z[1], tol) || z[0].is_zero_within(tol) {
            RegionClass::Boundary
        } else {
            RegionClass::Interior
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        // The index set is unbounded straight up the z2 axis.
        Some(vec![0, 1])
    }

    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult> {
        if z.len() != 2 {
            return Err(WorkbenchError::DimensionMismatch { expected: 2, got: z.len() });
        }
        let zero = Scalar::zero();
        let one = Scalar::one();
        // The slice degenerates only on the parabola itself, where the
        // constraint slack can vanish; elsewhere in the index set (including
        // the z1 = 0 edge) every slack coefficient is strictly positive and
        // the slice is the full wedge.
        let on_parabola =
            self.index_contains(z, tol) && (&z[0] * &z[0]).eq_within(&z[1], tol);
        match (self.index_contains(z, tol), on_parabola) {
            (false, _) => Ok(SliceResult::Empty),
            (true, false) => {
                let rows = vec![
                    Constraint::eq(
                        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
                        z[0].clone(),
                    ),
                    Constraint::eq(
                        vec![zero.clone(), one.clone(), zero.clone(), zero.clone()],
                        z[1].clone(),
                    ),
                    Constraint::le(
                        vec![zero.clone(), zero.clone(), zero.clone(), -&one],
                        zero.clone(),
                    ),
                    Constraint::le(
                        vec![zero.clone(), zero.clone(), -&one, one.clone()],
                        zero.clone(),
                    ),
                ];
                Ok(SliceResult::Polyhedron(HPolyhedron::new(4, rows)?))
            }
            (true, true) => {
                let Some(k) = z[0].nearby_integer(tol).filter(|k| *k >= 0) else {
                    return Err(WorkbenchError::UncertifiedSlice(format!(
                        "boundary index ({}, {}) has a fractional first coordinate; \
                         no constraint in the family pins the slice there, so its \
                         closed form is only certified at integer boundary indices",
                        z[0], z[1]
                    )));
                };
                let rows = vec![
                    Constraint::eq(
                        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
                        Scalar::from_int(k),
                    ),
                    Constraint::eq(
                        vec![zero.clone(), one.clone(), zero.clone(), zero.clone()],
                        Scalar::from_int(k * k),
                    ),
                    // x4 = (k/(1+k)) x3, scaled to integer coefficients.
                    Constraint::eq(
                        vec![
                            zero.clone(),
                            zero.clone(),
                            Scalar::from_int(k),
                            Scalar::from_int(-(k + 1)),
                        ],
                        zero.clone(),
                    ),
                    Constraint::le(
                        vec![zero.clone(), zero.clone(), zero.clone(), -&one],
                        zero.clone(),
                    ),
                    Constraint::le(
                        vec![zero.clone(), zero.clone(), -&one, one.clone()],
                        zero.clone(),
                    ),
                ];
                Ok(SliceResult::Polyhedron(HPolyhedron::new(4, rows)?))
            }
        }
    }

    fn required_search_box(&self, x: &[Scalar], tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 4 {
            return Err(WorkbenchError::DimensionMismatch { expected: 4, got: x.len() });
        }
        // Every slice pins x1 = z1 and x2 = z2, so the only integer index
        // that can host x is (x1, x2) itself.
        let (Some(a), Some(b)) = (x[0].nearby_integer(tol), x[1].nearby_integer(tol)) else {
            return Ok(None);
        };
        Ok(Some(LatticeBox::new(vec![a, b], vec![a, b])?))
    }

    fn witness_y(&self, x: &[Scalar], _z: &[i64], _tol: Tol) -> Vec<Scalar> {
        vec![residual_bound(&x[2], &x[3])]
    }
}
