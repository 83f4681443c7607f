//! The formulation model: a set `S` in x-space is presented as the union,
//! over integer points `z` of an index set `I`, of closed convex slices
//! `A_z`. A formulation packages the membership oracle of the underlying
//! convex set `M` in (x, y, z)-space, the index set, closed-form slices and
//! construction-specific membership bounds.

use crate::error::WorkbenchError;
use crate::geometry::{ConvexPolygon, HPolyhedron};
use crate::report::ProbeReport;
use crate::scalar::{lattice_to_scalars, Scalar, Tol};
use crate::Result;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Variable counts of a formulation: `n` continuous coordinates of interest,
/// `p` auxiliary continuous variables, `d` integer variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub n: usize,
    pub p: usize,
    pub d: usize,
}

/// Where an index point sits relative to the index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionClass {
    Interior,
    Boundary,
    Outside,
}

/// Inclusive integer box, the search region for membership queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl LatticeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(WorkbenchError::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        Ok(LatticeBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn contains_box(&self, inner: &LatticeBox) -> bool {
        self.dim() == inner.dim()
            && (inner.is_degenerate()
                || self
                    .lo
                    .iter()
                    .zip(&self.hi)
                    .zip(inner.lo.iter().zip(&inner.hi))
                    .all(|((lo, hi), (ilo, ihi))| lo <= ilo && ihi <= hi))
    }

    /// All lattice points, lexicographically.
    pub fn points(&self) -> Vec<Vec<i64>> {
        if self.is_degenerate() {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for (lo, hi) in self.lo.iter().zip(&self.hi) {
            let mut next = Vec::new();
            for prefix in &out {
                for v in *lo..=*hi {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

/// One slice `A_z` in the x-space, in whichever closed form the construction
/// can certify.
#[derive(Clone, Debug)]
pub enum SliceResult {
    Empty,
    Polyhedron(HPolyhedron),
    Polygon(ConvexPolygon),
    /// Shared-body slice: `body` translated by `offset`. Keeping the base
    /// body explicit lets shape probes compare slices without renormalizing.
    TranslatedPolygon { body: ConvexPolygon, offset: [Scalar; 2] },
}

impl SliceResult {
    pub fn is_empty(&self) -> bool {
        matches!(self, SliceResult::Empty)
    }

    pub fn contains(&self, x: &[Scalar], tol: Tol) -> bool {
        match self {
            SliceResult::Empty => false,
            SliceResult::Polyhedron(h) => h.contains(x, tol),
            SliceResult::Polygon(p) => {
                x.len() == 2 && p.contains(&[x[0].clone(), x[1].clone()], tol)
            }
            SliceResult::TranslatedPolygon { body, offset } => {
                x.len() == 2
                    && body.contains(&[&x[0] - &offset[0], &x[1] - &offset[1]], tol)
            }
        }
    }

    /// The slice as a polygon in the plane, if it is one.
    pub fn as_polygon(&self) -> Option<ConvexPolygon> {
        match self {
            SliceResult::Polygon(p) => Some(p.clone()),
            SliceResult::TranslatedPolygon { body, offset } => Some(body.translate(offset)),
            _ => None,
        }
    }

    /// The slice as an H-polyhedron (polygons convert through their hrep).
    pub fn as_polyhedron(&self) -> Option<HPolyhedron> {
        match self {
            SliceResult::Polyhedron(h) => Some(h.clone()),
            _ => {
                let p = self.as_polygon()?;
                let rows = p
                    .hrep()
                    .into_iter()
                    .map(|h| {
                        crate::geometry::Constraint::le(
                            vec![h.normal[0].clone(), h.normal[1].clone()],
                            h.offset,
                        )
                    })
                    .collect();
                HPolyhedron::new(2, rows).ok()
            }
        }
    }

    /// Area for planar slices, volume placeholder otherwise.
    pub fn volume(&self) -> Option<Scalar> {
        self.as_polygon().map(|p| p.area())
    }

    /// A random member of the slice, exact-rational where the slice is.
    pub fn sample_point<R: Rng>(&self, rng: &mut R, tol: Tol) -> Option<Vec<Scalar>> {
        match self {
            SliceResult::Empty => None,
            SliceResult::Polyhedron(h) => h.sample_point(rng, tol),
            _ => {
                let p = self.as_polygon()?;
                let vs = p.vertices();
                let mut weights: Vec<i64> = (0..vs.len()).map(|_| rng.gen_range(0..=8)).collect();
                if weights.iter().all(|&w| w == 0) {
                    weights[0] = 1;
                }
                let total: i64 = weights.iter().sum();
                let mut x = [Scalar::zero(), Scalar::zero()];
                for (w, v) in weights.iter().zip(vs) {
                    let coef = Scalar::from_ratio(*w, total);
                    x[0] = &x[0] + &(&coef * &v[0]);
                    x[1] = &x[1] + &(&coef * &v[1]);
                }
                Some(vec![x[0].clone(), x[1].clone()])
            }
        }
    }
}

/// A mixed-integer convex formulation, presented operationally.
pub trait Formulation: Sync {
    /// Stable identifier used in reports and artifacts.
    fn name(&self) -> &'static str;

    fn dims(&self) -> Dims;

    /// Membership oracle of the underlying closed convex set `M` at a full
    /// point (x, y, z); `z` ranges over the reals here, integrality is a
    /// separate restriction imposed by [`member_s`].
    fn member_m(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], tol: Tol) -> bool;

    /// Membership oracle of the index set `I` (the z-projection of `M`).
    fn index_contains(&self, z: &[Scalar], tol: Tol) -> bool;

    fn index_classify(&self, z: &[Scalar], tol: Tol) -> RegionClass;

    /// Integer points of `I` inside `bounds`, lexicographically.
    fn lattice_points(&self, bounds: &LatticeBox, tol: Tol) -> Vec<Vec<i64>> {
        bounds
            .points()
            .into_iter()
            .filter(|z| self.index_contains(&lattice_to_scalars(z), tol))
            .collect()
    }

    /// A nonzero integer vector in the recession cone of `I`, when one exists
    /// and the construction certifies it.
    fn integer_recession_ray(&self) -> Option<Vec<i64>>;

    /// Closed-form slice `A_z`. `Ok(Empty)` means `z` is outside `I`;
    /// an error means the construction refuses to certify a closed form at
    /// this index.
    fn slice(&self, z: &[Scalar], tol: Tol) -> Result<SliceResult>;

    /// The lattice box that is guaranteed to contain every integer `z` whose
    /// slice could contain `x`. `None` certifies that no integer index fits.
    fn required_search_box(&self, x: &[Scalar], tol: Tol) -> Result<Option<LatticeBox>>;

    /// Auxiliary-variable witness for a point of slice `z` (empty when the
    /// formulation has no auxiliary variables).
    fn witness_y(&self, x: &[Scalar], z: &[i64], tol: Tol) -> Vec<Scalar>;
}

/// Read-only view of a formulation's index set.
pub struct IndexSetDescription<'a> {
    f: &'a dyn Formulation,
}

impl<'a> IndexSetDescription<'a> {
    pub fn of(f: &'a dyn Formulation) -> Self {
        IndexSetDescription { f }
    }

    pub fn dim(&self) -> usize {
        self.f.dims().d
    }

    pub fn contains(&self, z: &[Scalar], tol: Tol) -> bool {
        self.f.index_contains(z, tol)
    }

    pub fn classify(&self, z: &[Scalar], tol: Tol) -> RegionClass {
        self.f.index_classify(z, tol)
    }

    pub fn lattice_points(&self, bounds: &LatticeBox, tol: Tol) -> Vec<Vec<i64>> {
        self.f.lattice_points(bounds, tol)
    }

    pub fn integer_recession_ray(&self) -> Option<Vec<i64>> {
        self.f.integer_recession_ray()
    }
}

/// The unprojected cell `M` restricted to one integer index: a membership
/// oracle over (x, y).
pub struct BzCell<'a> {
    f: &'a dyn Formulation,
    z: Vec<Scalar>,
}

impl<'a> BzCell<'a> {
    pub fn new(f: &'a dyn Formulation, z: &[i64]) -> Self {
        BzCell { f, z: lattice_to_scalars(z) }
    }

    pub fn contains(&self, x: &[Scalar], y: &[Scalar], tol: Tol) -> bool {
        self.f.member_m(x, y, &self.z, tol)
    }
}

/// A successful membership query: the integer index and auxiliary witness.
#[derive(Clone, Debug)]
pub struct Witness {
    pub z: Vec<i64>,
    pub y: Vec<Scalar>,
}

/// Decides `x in S` by enumerating integer indices inside `search`.
///
/// The box is validated against the construction's own bound first: a box
/// that cannot be certified to cover all candidate indices is refused rather
/// than silently producing a false negative.
pub fn member_s(
    f: &dyn Formulation,
    x: &[Scalar],
    search: &LatticeBox,
    tol: Tol,
) -> Result<Option<Witness>> {
    let dims = f.dims();
    if x.len() != dims.n {
        return Err(WorkbenchError::DimensionMismatch { expected: dims.n, got: x.len() });
    }
    if search.dim() != dims.d {
        return Err(WorkbenchError::DimensionMismatch { expected: dims.d, got: search.dim() });
    }
    match f.required_search_box(x, tol)? {
        None => return Ok(None),
        Some(required) => {
            if !search.contains_box(&required) {
                return Err(WorkbenchError::SearchBoxTooSmall(format!(
                    "search box {:?}..{:?} does not cover the required candidate box {:?}..{:?}",
                    search.lo, search.hi, required.lo, required.hi
                )));
            }
        }
    }
    for z in f.lattice_points(search, tol) {
        let slice = f.slice(&lattice_to_scalars(&z), tol)?;
        if slice.contains(x, tol) {
            let y = f.witness_y(x, &z, tol);
            return Ok(Some(Witness { z, y }));
        }
    }
    Ok(None)
}

/// Draws random member pairs of `M` (via slices and witnesses) and checks
/// that their midpoints still belong to `M`. A convex `M` never produces a
/// violation; fixtures that merely pose as convex do.
pub fn convexity_spot_check(
    f: &dyn Formulation,
    sample_region: &LatticeBox,
    samples: usize,
    seed: u64,
    tol: Tol,
) -> ProbeReport {
    let mut report = ProbeReport::new(f.name(), "midpoint-membership");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices = f.lattice_points(sample_region, tol);
    if indices.is_empty() {
        return report;
    }
    let draw = |rng: &mut ChaCha8Rng| -> Option<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)> {
        let z = &indices[rng.gen_range(0..indices.len())];
        let slice = f.slice(&lattice_to_scalars(z), tol).ok()?;
        let x = slice.sample_point(rng, tol)?;
        let y = f.witness_y(&x, z, tol);
        Some((x, y, lattice_to_scalars(z)))
    };
    for case in 0..samples {
        let Some((xa, ya, za)) = draw(&mut rng) else {
            report.record_skip();
            continue;
        };
        let Some((xb, yb, zb)) = draw(&mut rng) else {
            report.record_skip();
            continue;
        };
        // Both endpoints must be members; a failure here is a construction
        // bug, not a convexity violation, so it is reported distinctly.
        let ea = f.member_m(&xa, &ya, &za, tol);
        let eb = f.member_m(&xb, &yb, &zb, tol);
        if !ea || !eb {
            report.record_outcome(
                &format!("sample-{case}"),
                "slice sample with witness is not a member of M",
                false,
            );
            continue;
        }
        let mid = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            a.iter().zip(b).map(|(u, v)| (u + v).half()).collect()
        };
        let ok = f.member_m(&mid(&xa, &xb), &mid(&ya, &yb), &mid(&za, &zb), tol);
        report.record_outcome(
            &format!("sample-{case}"),
            "midpoint of two members left M",
            ok,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_box_points_are_lexicographic() {
        let b = LatticeBox::new(vec![0, 0], vec![1, 1]).unwrap();
        assert_eq!(
            b.points(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        let empty = LatticeBox::new(vec![2], vec![1]).unwrap();
        assert!(empty.points().is_empty());
        assert!(empty.is_degenerate());
    }

    #[test]
    fn box_containment_with_degenerate_inner() {
        let outer = LatticeBox::new(vec![0, 0], vec![3, 3]).unwrap();
        let inner = LatticeBox::new(vec![1, 1], vec![2, 2]).unwrap();
        let degenerate = LatticeBox::new(vec![5, 5], vec![1, 1]).unwrap();
        assert!(outer.contains_box(&inner));
        assert!(!inner.contains_box(&outer));
        // A degenerate requirement is vacuously covered.
        assert!(inner.contains_box(&degenerate));
    }
}
