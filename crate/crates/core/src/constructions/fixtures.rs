//! Small formulations used to exercise the analysis probes from both sides:
//! one genuinely convex set with an infimum that jumps to -infinity away
//! from a single index, and deliberately broken families that a correct
//! probe must flag.

use crate::error::WorkbenchError;
use crate::formulation::{Dims, Formulation, LatticeBox, RegionClass, SliceResult};
use crate::geometry::{Constraint, ConvexPolygon, HPolyhedron};
use crate::scalar::{Scalar, Tol};
use crate::Result;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Convex set `{(x, y, z) : x^2 <= y z, x <= -z, 0 <= z <= 1}` with one
/// continuous coordinate and one auxiliary variable. Its slice at z = 0 is
/// the single point {0}, while every slice at z in (0, 1] is the half-line
/// (-inf, -z]: the infimum of x over the slices is 0 at the origin index and
/// -infinity everywhere else, a legal discontinuity for a convex family.
#[derive(Clone, Copy, Debug, Default)]
pub struct OriginHalflineFixture;

impl Formulation for OriginHalflineFixture {
    fn name(&self) -> &'static str {
        "origin-halfline-fixture"
    }

    fn dims(&self) -> Dims {
        Dims { n: 1, p: 1, d: 1 }
    }

    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 1 || y.len() != 1 || z.len() != 1 {
            return false;
        }
        let zero = Scalar::zero();
        zero.le_within(&z[0], tol)
            && z[0].le_within(&Scalar::one(), tol)
            && (&x[0] * &x[0]).le_within(&(&y[0] * &z[0]), tol)
            && x[0].le_within(&-&z[0], tol)
    }

    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool {
        z.len() == 1
            && Scalar::zero().le_within(&z[0], tol)
            && z[0].le_within(&Scalar::one(), tol)
    }

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        if !self.index_contains(z, tol) {
            RegionClass::Outside
        } else if z[0].is_zero_within(tol) || z[0].eq_within(&Scalar::one(), tol) {
            RegionClass::Boundary
        } else {
            RegionClass::Interior
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        None
    }

    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult> {
        if z.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: z.len() });
        }
        if !self.index_contains(z, tol) {
            return Ok(SliceResult::Empty);
        }
        let rows = if z[0].is_zero_within(tol) {
            // x^2 <= 0 pins the slice to the origin.
            vec![Constraint::eq(vec![Scalar::one()], Scalar::zero())]
        } else {
            // y absorbs the quadratic constraint, leaving the half-line.
            vec![Constraint::le(vec![Scalar::one()], -&z[0])]
        };
        Ok(SliceResult::Polyhedron(HPolyhedron::new(1, rows)?))
    }

    fn required_search_box(&self, x: &[Scalar], _tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: x.len() });
        }
        Ok(Some(LatticeBox::new(vec![0], vec![1])?))
    }

    fn witness_y(&self, x: &[Scalar], z: &[i64], _tol: Tol) -> Vec<Scalar> {
        if z == [1] {
            vec![&x[0] * &x[0]]
        } else {
            vec![Scalar::zero()]
        }
    }
}

/// Broken-on-purpose family: slice `z` is the chord of the parabola from
/// (z, z^2) to (z+1, (z+1)^2). The union of the chords is the graph of a
/// piecewise-linear function, which no convex set in (x, z)-space can slice
/// into; probes that compare infima across indices must catch it.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParabolaChordFixture;

impl ParabolaChordFixture {
    fn chord(z: &Scalar) -> Result<ConvexPolygon> {
        let z1 = z + &Scalar::one();
        ConvexPolygon::segment([z.clone(), z * z], [z1.clone(), &z1 * &z1])
    }
}

impl Formulation for ParabolaChordFixture {
    fn name(&self) -> &'static str {
        "parabola-chord-fixture"
    }

    fn dims(&self) -> Dims {
        Dims { n: 2, p: 0, d: 1 }
    }

    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 2 || !y.is_empty() || z.len() != 1 {
            return false;
        }
        Self::chord(&z[0])
            .map(|seg| seg.contains(&[x[0].clone(), x[1].clone()], tol))
            .unwrap_or(false)
    }

    fn index_contains(&self, z: &[Scalar], _tol: Tol) -> bool {
        z.len() == 1
    }

    fn index_classify(&self, z: &[Scalar], _tol: Tol) -> RegionClass {
        if z.len() == 1 {
            RegionClass::Interior
        } else {
            RegionClass::Outside
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        Some(vec![1])
    }

    fn slice(&self, z: &[Scalar], _tol: Tol) -> Result<SliceResult> {
        if z.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: z.len() });
        }
        Ok(SliceResult::Polygon(Self::chord(&z[0])?))
    }

    fn required_search_box(&self, x: &[Scalar], tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 2 {
            return Err(WorkbenchError::DimensionMismatch { expected: 2, got: x.len() });
        }
        // Chord z spans x1 in [z, z+1].
        let (lo, hi) = match x[0].as_rational() {
            Some(r) => {
                let lo = (r - &BigRational::one()).ceil().to_integer();
                let hi = r.floor().to_integer();
                match (lo.to_i64(), hi.to_i64()) {
                    (Some(lo), Some(hi)) => (lo, hi),
                    _ => {
                        return Err(WorkbenchError::InvalidInput(
                            "coordinate outside the supported integer range".into(),
                        ))
                    }
                }
            }
            None => {
                let v = x[0].to_f64();
                if !v.is_finite() {
                    return Err(WorkbenchError::InvalidInput("non-finite coordinate".into()));
                }
                ((v - 1.0 - tol.0).ceil() as i64, (v + tol.0).floor() as i64)
            }
        };
        if lo > hi {
            return Ok(None);
        }
        Ok(Some(LatticeBox::new(vec![lo], vec![hi])?))
    }

    fn witness_y(&self, _x: &[Scalar], _z: &[i64], _tol: Tol) -> Vec<Scalar> {
        Vec::new()
    }
}

/// Broken-on-purpose family: two unit intervals four units apart, glued by a
/// step in z rather than a convex tube. Midpoints of cross-index member
/// pairs leave the set, so the random midpoint spot check must report
/// violations.
#[derive(Clone, Copy, Debug, Default)]
pub struct DisjointBoxesFixture;

impl DisjointBoxesFixture {
    fn interval(z: &Scalar, tol: Tol) -> (i64, i64) {
        if z.le_within(&Scalar::from_ratio(1, 2), tol) {
            (0, 1)
        } else {
            (4, 5)
        }
    }
}

impl Formulation for DisjointBoxesFixture {
    fn name(&self) -> &'static str {
        "disjoint-boxes-fixture"
    }

    fn dims(&self) -> Dims {
        Dims { n: 1, p: 0, d: 1 }
    }

    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 1 || !y.is_empty() || z.len() != 1 {
            return false;
        }
        if !self.index_contains(z, tol) {
            return false;
        }
        let (lo, hi) = Self::interval(&z[0], tol);
        x[0].ge_within(&Scalar::from_int(lo), tol) && x[0].le_within(&Scalar::from_int(hi), tol)
    }

    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool {
        z.len() == 1
            && Scalar::zero().le_within(&z[0], tol)
            && z[0].le_within(&Scalar::one(), tol)
    }

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        if !self.index_contains(z, tol) {
            RegionClass::Outside
        } else if z[0].is_zero_within(tol) || z[0].eq_within(&Scalar::one(), tol) {
            RegionClass::Boundary
        } else {
            RegionClass::Interior
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        None
    }

    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult> {
        if z.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: z.len() });
        }
        if !self.index_contains(z, tol) {
            return Ok(SliceResult::Empty);
        }
        let (lo, hi) = Self::interval(&z[0], tol);
        let rows = vec![
            Constraint::le(vec![Scalar::one()], Scalar::from_int(hi)),
            Constraint::le(vec![-Scalar::one()], Scalar::from_int(-lo)),
        ];
        Ok(SliceResult::Polyhedron(HPolyhedron::new(1, rows)?))
    }

    fn required_search_box(&self, x: &[Scalar], _tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: x.len() });
        }
        Ok(Some(LatticeBox::new(vec![0], vec![1])?))
    }

    fn witness_y(&self, _x: &[Scalar], _z: &[i64], _tol: Tol) -> Vec<Scalar> {
        Vec::new()
    }
}

/// Broken-on-purpose family: interior slices disagree about boundedness
/// (index 1 is the unit interval, every other index the whole nonnegative
/// axis), so the finiteness pattern of the slice infima is not constant on
/// the interior and the domain-equality probe must flag it.
#[derive(Clone, Copy, Debug, Default)]
pub struct MixedDomainFixture;

impl MixedDomainFixture {
    fn bounded_at(z: &Scalar, tol: Tol) -> bool {
        z.eq_within(&Scalar::one(), tol)
    }
}

impl Formulation for MixedDomainFixture {
    fn name(&self) -> &'static str {
        "mixed-domain-fixture"
    }

    fn dims(&self) -> Dims {
        Dims { n: 1, p: 0, d: 1 }
    }

    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 1 || !y.is_empty() || z.len() != 1 {
            return false;
        }
        if !self.index_contains(z, tol) || !Scalar::zero().le_within(&x[0], tol) {
            return false;
        }
        !Self::bounded_at(&z[0], tol) || x[0].le_within(&Scalar::one(), tol)
    }

    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool {
        z.len() == 1
            && Scalar::zero().le_within(&z[0], tol)
            && z[0].le_within(&Scalar::from_int(4), tol)
    }

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        if !self.index_contains(z, tol) {
            RegionClass::Outside
        } else if z[0].is_zero_within(tol) || z[0].eq_within(&Scalar::from_int(4), tol) {
            RegionClass::Boundary
        } else {
            RegionClass::Interior
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        None
    }

    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult> {
        if z.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: z.len() });
        }
        if !self.index_contains(z, tol) {
            return Ok(SliceResult::Empty);
        }
        let mut rows = vec![Constraint::le(vec![-Scalar::one()], Scalar::zero())];
        if Self::bounded_at(&z[0], tol) {
            rows.push(Constraint::le(vec![Scalar::one()], Scalar::one()));
        }
        Ok(SliceResult::Polyhedron(HPolyhedron::new(1, rows)?))
    }

    fn required_search_box(&self, x: &[Scalar], _tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: x.len() });
        }
        Ok(Some(LatticeBox::new(vec![0], vec![4])?))
    }

    fn witness_y(&self, _x: &[Scalar], _z: &[i64], _tol: Tol) -> Vec<Scalar> {
        Vec::new()
    }
}

/// Family of unit-area squares along the axis, axis-aligned at even indices
/// and rotated 45 degrees at odd ones. Exactly two shapes up to translation,
/// which is the most a one-integer-variable equal-volume family may have.
pub fn interleaved_squares(z_lo: i64, z_hi: i64) -> Vec<(Vec<i64>, ConvexPolygon)> {
    let mut out = Vec::new();
    for z in z_lo..=z_hi {
        let c = Scalar::from_int(z);
        let poly = if z.rem_euclid(2) == 0 {
            let h = Scalar::from_ratio(1, 2);
            ConvexPolygon::new(vec![
                [&c + &h, h.clone()],
                [&c - &h, h.clone()],
                [&c - &h, -&h],
                [&c + &h, -&h],
            ])
            .expect("axis square")
        } else {
            let d = Scalar::from_f64(std::f64::consts::FRAC_1_SQRT_2);
            ConvexPolygon::new(vec![
                [&c + &d, Scalar::zero()],
                [c.clone(), d.clone()],
                [&c - &d, Scalar::zero()],
                [c.clone(), -&d],
            ])
            .expect("rotated square")
        };
        out.push((vec![z], poly));
    }
    out
}
