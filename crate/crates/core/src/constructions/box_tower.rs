//! A tower of congruent axis-aligned squares, one per index in a bounded
//! integer interval, as the minimal equal-volume family: every slice is a
//! translate of every other, so the side-length function of the slices is
//! constant and all volume inequalities hold with equality.
//!
//! The underlying convex set is the sheared prism
//! `{(x, z) : lo <= z <= hi, |x1 - z| <= side/2, |x2| <= side/2}`, whose
//! slice at any real z in [lo, hi] is the square of side `side` centered at
//! (z, 0).

use crate::error::WorkbenchError;
use crate::formulation::{Dims, Formulation, LatticeBox, RegionClass, SliceResult};
use crate::geometry::ConvexPolygon;
use crate::scalar::{Scalar, Tol};
use crate::Result;
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct BoxTower {
    side: Scalar,
    z_lo: i64,
    z_hi: i64,
}

impl BoxTower {
    pub fn new(side: Scalar, z_lo: i64, z_hi: i64) -> Result<Self> {
        if side.sign_within(Tol::default()) != Ordering::Greater {
            return Err(WorkbenchError::InvalidParameter(
                "square side must be positive".into(),
            ));
        }
        if z_lo > z_hi {
            return Err(WorkbenchError::InvalidParameter(format!(
                "empty index interval [{z_lo}, {z_hi}]"
            )));
        }
        Ok(BoxTower { side, z_lo, z_hi })
    }

    pub fn side(&self) -> &Scalar {
        &self.side
    }

    pub fn z_range(&self) -> (i64, i64) {
        (self.z_lo, self.z_hi)
    }

    /// The shared slice body: the square of side `side` centered at the
    /// origin, with exact vertices when the side is exact.
    pub fn square(&self) -> ConvexPolygon {
        let h = self.side.half();
        ConvexPolygon::new(vec![
            [h.clone(), h.clone()],
            [-&h, h.clone()],
            [-&h, -&h],
            [h.clone(), -&h],
        ])
        .expect("a positive side gives a genuine square")
    }
}

impl Default for BoxTower {
    /// Unit squares over z = -5..5.
    fn default() -> Self {
        BoxTower::new(Scalar::one(), -5, 5).expect("static parameters")
    }
}

impl Formulation for BoxTower {
    fn name(&self) -> &'static str {
        // Stable artifact id; part of the command-line contract.
        "box-tower"
    }

    fn dims(&self) -> Dims {
        Dims { n: 2, p: 0, d: 1 }
    }

    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 2 || !y.is_empty() || z.len() != 1 {
            return false;
        }
        let h = self.side.half();
        let off = &x[0] - &z[0];
        self.index_contains(z, tol)
            && off.abs().le_within(&h, tol)
            && x[1].abs().le_within(&h, tol)
    }

    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool {
        z.len() == 1
            && z[0].ge_within(&Scalar::from_int(self.z_lo), tol)
            && z[0].le_within(&Scalar::from_int(self.z_hi), tol)
    }

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        if !self.index_contains(z, tol) {
            RegionClass::Outside
        } else if z[0].eq_within(&Scalar::from_int(self.z_lo), tol)
            || z[0].eq_within(&Scalar::from_int(self.z_hi), tol)
        {
            RegionClass::Boundary
        } else {
            RegionClass::Interior
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        // Bounded index interval: no recession direction at all.
        None
    }

    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult> {
        if z.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: z.len() });
        }
        if !self.index_contains(z, tol) {
            return Ok(SliceResult::Empty);
        }
        Ok(SliceResult::TranslatedPolygon {
            body: self.square(),
            offset: [z[0].clone(), Scalar::zero()],
        })
    }

    fn required_search_box(&self, x: &[Scalar], tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 2 {
            return Err(WorkbenchError::DimensionMismatch { expected: 2, got: x.len() });
        }
        // Membership needs |x1 - z| <= side/2.
        let h = self.side.half().to_f64();
        let v = x[0].to_f64();
        if !v.is_finite() {
            return Err(WorkbenchError::InvalidInput("non-finite coordinate".into()));
        }
        let lo = ((v - h - tol.0).ceil() as i64).max(self.z_lo);
        let hi = ((v + h + tol.0).floor() as i64).min(self.z_hi);
        if lo > hi {
            return Ok(None);
        }
        Ok(Some(LatticeBox::new(vec![lo], vec![hi])?))
    }

    fn witness_y(&self, _x: &[Scalar], _z: &[i64], _tol: Tol) -> Vec<Scalar> {
        Vec::new()
    }
}
