//! A planar tower of regular polygons with strictly growing vertex counts,
//! one per integer index, presented through a single convex set in
//! (x, z)-space.
//!
//! Slice `i` is the regular `side_count(i)`-gon inscribed in the circle of
//! radius `radius(i) = i/(2(i+1))` about the origin, translated to (i, 0).
//! The radii increase toward 1/2, so consecutive translates stay disjoint,
//! while `side_count` is chosen minimally so that each polygon's apothem
//! reaches the chord of the radius function through its two neighbors:
//!
//! ```text
//!   cos(pi / side_count(i)) >= apothem_ratio(i)
//!                            = (radius(i-1) + radius(i+1)) / (2 radius(i))
//! ```
//!
//! The convex hull of the resulting conic sections is encoded one section at
//! a time: `cone_section_contains(i, x, z)` scales slice body `i` by
//! `t = chord_value(i, z) / chord_value(i, i)` and tests the scaled
//! half-planes plus `t >= 0`, which is exactly the closed conic hull of
//! `body x {t = 1}` because the body contains the origin in its interior.
//! A point belongs to the underlying convex set when every section accepts
//! it; at integer z the section at i = z reproduces the body itself, and the
//! chord-domination inequality `radius(z) <= chord_value(i, z)` (checked in
//! `validity_sweep`) keeps every farther section slack, so a finite family
//! decides membership.

use crate::error::WorkbenchError;
use crate::formulation::{Dims, Formulation, LatticeBox, RegionClass, SliceResult};
use crate::geometry::ConvexPolygon;
use crate::parallel;
use crate::report::ProbeReport;
use crate::scalar::{Scalar, Tol};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Circumradius of the body at index `i`: i / (2(i+1)), strictly increasing
/// toward 1/2.
pub fn radius(i: u64) -> Scalar {
    Scalar::from_ratio(i as i64, 2 * (i as i64 + 1))
}

/// Value at `z` of the chord of the radius function through the points
/// (i-1, radius(i-1)) and (i+1, radius(i+1)). Exact for exact `z`.
pub fn chord_value(i: u64, z: &Scalar) -> Scalar {
    assert!(i >= 1, "chord needs a predecessor index");
    let below = radius(i - 1);
    let above = radius(i + 1);
    let slope = (&above - &below).half();
    let anchor = Scalar::from_int(i as i64 - 1);
    &below + &(&slope * &(z - &anchor))
}

fn apothem_ratio_rational(i: u64) -> Result<BigRational> {
    if i < 1 {
        return Err(WorkbenchError::InvalidParameter(
            "apothem ratio needs i >= 1".into(),
        ));
    }
    let ib = BigInt::from(i);
    let num = (&ib + 1) * (&ib * &ib + &ib - 1);
    let den = &ib * &ib * (&ib + 2);
    let x = BigRational::new(num, den);
    if x <= BigRational::zero() || x >= BigRational::one() {
        return Err(WorkbenchError::Internal(format!(
            "apothem ratio out of (0, 1) at i = {i}"
        )));
    }
    Ok(x)
}

/// Fraction of the circumradius that the apothem of body `i` must reach:
/// (i+1)(i^2+i-1) / (i^2(i+2)), which equals
/// (radius(i-1) + radius(i+1)) / (2 radius(i)). Always in (0, 1), so a
/// polygon with enough sides exists.
pub fn apothem_ratio(i: u64) -> Result<Scalar> {
    Ok(Scalar::from_rational(apothem_ratio_rational(i)?))
}

// Rational bracket of pi with width 10^-60, for certified comparisons
// against cos(pi/m) when floats get too close to the decision boundary.
const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944";

fn pi_bounds() -> (BigRational, BigRational) {
    let num = BigInt::parse_bytes(PI_DIGITS.as_bytes(), 10).expect("literal digits");
    let den = num_traits::pow(BigInt::from(10), 60);
    let lo = BigRational::new(num.clone(), den.clone());
    let hi = BigRational::new(num + BigInt::one(), den);
    (lo, hi)
}

/// Encloses cos(t) in a rational interval of width 2 eps via the alternating
/// Taylor series; valid for |t| < sqrt(6), where term magnitudes decrease.
fn cos_bounds(t: &BigRational, eps: &BigRational) -> (BigRational, BigRational) {
    let t2 = t * t;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut k: i64 = 1;
    loop {
        term = -(&term * &t2) / BigRational::from_integer(BigInt::from((2 * k - 1) * 2 * k));
        if k >= 2 && term.abs() < *eps {
            // The first omitted term bounds the truncation error.
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    (&sum - eps, &sum + eps)
}

/// Certified `cos(pi/m) >= x`. Decided by floats when the margin is clearly
/// above rounding error, otherwise by exact rational interval arithmetic;
/// an undecidable hairline (which would need cos(pi/m) rational, impossible
/// above 1/2) is surfaced as an internal error instead of a silent guess.
fn cos_clears_ratio(m: u64, x: &BigRational) -> Result<bool> {
    let cf = (std::f64::consts::PI / m as f64).cos();
    let xf = x.to_f64().unwrap_or(f64::NAN);
    if xf.is_finite() && (cf - xf).abs() > 1e-12 {
        return Ok(cf > xf);
    }
    let (pi_lo, pi_hi) = pi_bounds();
    let mr = BigRational::from_integer(BigInt::from(m));
    let eps = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 45));
    // cos is decreasing on [0, pi], so the upper angle gives the lower bound.
    let (lo, _) = cos_bounds(&(pi_hi / &mr), &eps);
    let (_, hi) = cos_bounds(&(pi_lo / &mr), &eps);
    if lo >= *x {
        return Ok(true);
    }
    if hi < *x {
        return Ok(false);
    }
    Err(WorkbenchError::Internal(format!(
        "side count undecided at m = {m}: cos(pi/m) within 1e-45 of the apothem ratio"
    )))
}

/// Minimal number of sides for the body at index `i`, i.e. the smallest m
/// with cos(pi/m) >= apothem_ratio(i). Every comparison near the boundary is
/// re-decided in exact interval arithmetic, so the count is certified.
pub fn side_count(i: u64) -> Result<u64> {
    let x = apothem_ratio_rational(i)?;
    let estimate = std::f64::consts::PI / x.to_f64().unwrap_or(0.5).acos();
    let mut m = if estimate.is_finite() {
        ((estimate.floor() as i64) - 3).max(3) as u64
    } else {
        3
    };
    while !cos_clears_ratio(m, &x)? {
        m += 1;
    }
    while m > 3 && cos_clears_ratio(m - 1, &x)? {
        m -= 1;
    }
    Ok(m)
}

/// The body of slice `i`: a regular side_count(i)-gon inscribed in the
/// circle of radius(i) about the origin.
pub fn body(i: u64) -> Result<ConvexPolygon> {
    let sides = side_count(i)?;
    ConvexPolygon::regular(sides, &radius(i), &[Scalar::zero(), Scalar::zero()])
}

fn section_scale(i: u64, z: &Scalar) -> Scalar {
    let at_own_index = chord_value(i, &Scalar::from_int(i as i64));
    &chord_value(i, z) / &at_own_index
}

/// Membership of (x, z) in the conic section indexed by `i`: with
/// t = chord_value(i, z) / chord_value(i, i), tests `a.x <= b t` for every
/// half-plane `a.x <= b` of body `i`, plus `t >= 0`. At z = i this is the
/// body itself; the apex x = 0, t = 0 is admitted automatically.
pub fn cone_section_contains(i: u64, x: &[Scalar; 2], z: &Scalar, tol: Tol) -> Result<bool> {
    let t = section_scale(i, z);
    if t.lt_within(&Scalar::zero(), tol) {
        return Ok(false);
    }
    let b = body(i)?;
    for hp in b.hrep() {
        let lhs = &(&hp.normal[0] * &x[0]) + &(&hp.normal[1] * &x[1]);
        if !lhs.le_within(&(&hp.offset * &t), tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum slack of (x, z) against the section indexed by `i`, over the
/// scaled half-planes and the t >= 0 row; negative means violated.
pub fn cone_section_slack(i: u64, x: &[Scalar; 2], z: &Scalar) -> Result<f64> {
    let t = section_scale(i, z);
    let b = body(i)?;
    let mut min = t.to_f64();
    for hp in b.hrep() {
        let lhs = &(&hp.normal[0] * &x[0]) + &(&hp.normal[1] * &x[1]);
        min = min.min((&(&hp.offset * &t) - &lhs).to_f64());
    }
    Ok(min)
}

enum SweepRecord {
    Slack { case: String, slack: f64 },
    Tight { case: String, ok: bool },
}

/// The tower formulation. `i_max` is the horizon for cross-checking the
/// constraint family on membership queries; sections beyond
/// max(i_max, ceil(z) + 2) are slack at every reachable point.
#[derive(Clone, Copy, Debug)]
pub struct PolygonTower {
    i_max: u64,
}

impl PolygonTower {
    pub fn new(i_max: u64) -> Result<Self> {
        if i_max < 2 {
            return Err(WorkbenchError::InvalidParameter(
                "constraint-family horizon i_max must be at least 2".into(),
            ));
        }
        Ok(PolygonTower { i_max })
    }

    pub fn i_max(&self) -> u64 {
        self.i_max
    }

    fn family_horizon(&self, z: &Scalar) -> u64 {
        let ceiling = z.to_f64().ceil();
        let near = if ceiling.is_finite() && ceiling > 0.0 {
            ceiling as u64
        } else {
            0
        };
        self.i_max.max(near + 2)
    }

    /// Membership of x in the union, with the witnessing integer index.
    /// Candidates are the integers within 1/2 of x1 (every body stays inside
    /// the open half-unit disk around its center); each candidate's direct
    /// body test is cross-checked against the whole section family.
    pub fn member_with_witness(&self, x: &[Scalar; 2], tol: Tol) -> Result<Option<i64>> {
        let Some(bounds) = self.required_search_box(&x[..], tol)? else {
            return Ok(None);
        };
        for k in bounds.lo[0]..=bounds.hi[0] {
            let shifted = [&x[0] - &Scalar::from_int(k), x[1].clone()];
            let direct = body(k as u64)?.contains(&shifted, tol);
            let zc = Scalar::from_int(k);
            let mut family = true;
            for i in 1..=self.family_horizon(&zc) {
                if !cone_section_contains(i, &shifted, &zc, tol)? {
                    family = false;
                    break;
                }
            }
            if direct != family {
                return Err(WorkbenchError::Internal(format!(
                    "slice body and section family disagree at index {k}"
                )));
            }
            if direct {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Sweeps every vertex of every body in `j_range` against the sections
    /// in `i_range`, recording the constraint slack; at i = j the vertices
    /// must be tight instead (the section reproduces its own body). Also
    /// records the chord-domination gap chord_value(i, z) - radius(z) for
    /// integer z in [1, 100] farther than 1 from i, which is what keeps far
    /// sections slack.
    pub fn validity_sweep(
        &self,
        i_range: (u64, u64),
        j_range: (u64, u64),
        workers: usize,
        tol: Tol,
    ) -> Result<ProbeReport> {
        if i_range.0 < 1 || j_range.0 < 1 || i_range.1 < i_range.0 || j_range.1 < j_range.0 {
            return Err(WorkbenchError::InvalidParameter(
                "sweep ranges must be nonempty and start at 1".into(),
            ));
        }
        let mut report = ProbeReport::new("polygon-tower", "validity-sweep");
        let js: Vec<u64> = (j_range.0..=j_range.1).collect();
        let per_j = parallel::map_ordered(workers, &js, |&j| -> Result<Vec<SweepRecord>> {
            let b = body(j)?;
            let zc = Scalar::from_int(j as i64);
            let mut out = Vec::new();
            for i in i_range.0..=i_range.1 {
                for (vi, v) in b.vertices().iter().enumerate() {
                    let slack = cone_section_slack(i, v, &zc)?;
                    if i == j {
                        out.push(SweepRecord::Tight {
                            case: format!("i={i} j={j} v={vi}"),
                            ok: slack.abs() <= tol.0,
                        });
                    } else {
                        out.push(SweepRecord::Slack {
                            case: format!("i={i} j={j} v={vi}"),
                            slack,
                        });
                    }
                }
            }
            Ok(out)
        });
        for chunk in per_j {
            for record in chunk? {
                match record {
                    SweepRecord::Slack { case, slack } => report.record_slack(
                        &case,
                        "vertex of a neighboring body against this section",
                        slack,
                        tol.0,
                    ),
                    SweepRecord::Tight { case, ok } => report.record_outcome(
                        &case,
                        "vertex tight in its own section",
                        ok,
                    ),
                }
            }
        }
        for i in i_range.0..=i_range.1 {
            for z in 1..=100u64 {
                if z + 1 >= i && z <= i + 1 {
                    continue;
                }
                let gap = &chord_value(i, &Scalar::from_int(z as i64)) - &radius(z);
                report.record_slack(
                    &format!("chord i={i} z={z}"),
                    "chord value dominates the circumradius away from its index",
                    gap.to_f64(),
                    tol.0,
                );
            }
        }
        Ok(report)
    }
}

impl Formulation for PolygonTower {
    fn name(&self) -> &'static str {
        // Stable artifact id; part of the command-line contract.
        "polygon-tower"
    }

    fn dims(&self) -> Dims {
        Dims { n: 2, p: 0, d: 1 }
    }

    /// Finite section family up to the horizon. At integer z this family is
    /// equivalent to the infinite one (the own-index section pins the point
    /// into the body, whose circumradius every farther chord dominates); at
    /// fractional z it is the configured truncation, which checks a subset
    /// of the constraints and so can only err on the accepting side.
    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool {
        if x.len() != 2 || !y.is_empty() || z.len() != 1 {
            return false;
        }
        if !z[0].ge_within(&Scalar::one(), tol) {
            return false;
        }
        let shifted = [&x[0] - &z[0], x[1].clone()];
        (1..=self.family_horizon(&z[0]))
            .all(|i| cone_section_contains(i, &shifted, &z[0], tol).unwrap_or(false))
    }

    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool {
        z.len() == 1 && z[0].ge_within(&Scalar::one(), tol)
    }

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        if !self.index_contains(z, tol) {
            RegionClass::Outside
        } else if z[0].eq_within(&Scalar::one(), tol) {
            RegionClass::Boundary
        } else {
            RegionClass::Interior
        }
    }

    fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        Some(vec![1])
    }

    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult> {
        if z.len() != 1 {
            return Err(WorkbenchError::DimensionMismatch { expected: 1, got: z.len() });
        }
        if !self.index_contains(z, tol) {
            return Ok(SliceResult::Empty);
        }
        let Some(k) = z[0].nearby_integer(tol).filter(|k| *k >= 1) else {
            return Err(WorkbenchError::UncertifiedSlice(format!(
                "slice at fractional index {} is an intersection of infinitely many \
                 conic sections with no certified finite form; closed-form slices \
                 exist at integer indices only",
                z[0]
            )));
        };
        Ok(SliceResult::TranslatedPolygon {
            body: body(k as u64)?,
            offset: [Scalar::from_int(k), Scalar::zero()],
        })
    }

    fn required_search_box(&self, x: &[Scalar], tol: Tol) -> Result<Option<LatticeBox>> {
        if x.len() != 2 {
            return Err(WorkbenchError::DimensionMismatch { expected: 2, got: x.len() });
        }
        // Every body stays within radius(k) < 1/2 of its center (k, 0).
        let (lo, hi) = match x[0].as_rational() {
            Some(r) => {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let lo = (r - &half).ceil().to_integer();
                let hi = (r + &half).floor().to_integer();
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
                    return Err(WorkbenchError::InvalidInput(
                        "non-finite coordinate".into(),
                    ));
                }
                ((v - 0.5 - tol.0).ceil() as i64, (v + 0.5 + tol.0).floor() as i64)
            }
        };
        let lo = lo.max(1);
        if lo > hi {
            return Ok(None);
        }
        Ok(Some(LatticeBox::new(vec![lo], vec![hi])?))
    }

    fn witness_y(&self, _x: &[Scalar], _z: &[i64], _tol: Tol) -> Vec<Scalar> {
        Vec::new()
    }
}
