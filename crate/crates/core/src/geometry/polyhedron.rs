//! H-polyhedra `{ x : A x <= b, E x = f }` in dimension at most 4, with
//! support functions and recession cones computed by exhaustive vertex and
//! extreme-ray enumeration.
//!
//! Sets with a nontrivial lineality space (directions orthogonal to every
//! constraint normal) are first reduced to a pointed polyhedron on the
//! orthogonal complement; in the reduced space "nonempty" and "has a vertex"
//! coincide, which makes emptiness decidable by enumeration alone.

use crate::error::WorkbenchError;
use crate::linalg;
use crate::scalar::{ExtReal, Scalar, Tol};
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

/// One linear constraint `normal . x (<=|=) offset`. Equalities are stored
/// once, not as opposing inequality pairs.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
    pub relation: Relation,
}

impl Constraint {
    pub fn le(normal: Vec<Scalar>, offset: Scalar) -> Self {
        Constraint { normal, offset, relation: Relation::Le }
    }

    pub fn eq(normal: Vec<Scalar>, offset: Scalar) -> Self {
        Constraint { normal, offset, relation: Relation::Eq }
    }

    fn satisfied_by(&self, x: &[Scalar], tol: Tol) -> bool {
        let lhs = linalg::dot(&self.normal, x);
        match self.relation {
            Relation::Le => lhs.le_within(&self.offset, tol),
            Relation::Eq => lhs.eq_within(&self.offset, tol),
        }
    }

    /// Homogeneous version, for directions.
    fn admits_direction(&self, d: &[Scalar], tol: Tol) -> bool {
        let lhs = linalg::dot(&self.normal, d);
        match self.relation {
            Relation::Le => lhs.le_within(&Scalar::zero(), tol),
            Relation::Eq => lhs.is_zero_within(tol),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HPolyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

/// Pointed reformulation of a polyhedron on the orthogonal complement of its
/// lineality space. `complement` columns lift reduced coordinates back into
/// the ambient space.
struct Reduced {
    lineality: Vec<Vec<Scalar>>,
    complement: Vec<Vec<Scalar>>,
    constraints: Vec<Constraint>,
}

impl Reduced {
    fn dim(&self) -> usize {
        self.complement.len()
    }

    fn lift(&self, u: &[Scalar]) -> Vec<Scalar> {
        let ambient = self.lineality.first().map_or_else(
            || self.complement.first().map_or(0, |q| q.len()),
            |l| l.len(),
        );
        let mut x = vec![Scalar::zero(); ambient];
        for (coef, basis) in u.iter().zip(&self.complement) {
            for (xi, bi) in x.iter_mut().zip(basis) {
                let delta = coef * bi;
                *xi = &*xi + &delta;
            }
        }
        x
    }
}

/// Calls `f` on every index combination of size `0..=kmax` from `0..m`.
fn for_each_combination(m: usize, kmax: usize, f: &mut impl FnMut(&[usize])) {
    fn recurse(m: usize, start: usize, left: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(cur);
        if left == 0 {
            return;
        }
        for i in start..m {
            cur.push(i);
            recurse(m, i + 1, left - 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    recurse(m, 0, kmax, &mut cur, f);
}

impl HPolyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        for c in &constraints {
            if c.normal.len() != dim {
                return Err(WorkbenchError::DimensionMismatch {
                    expected: dim,
                    got: c.normal.len(),
                });
            }
            if c.normal.iter().all(|v| v.is_zero_within(Tol::default())) {
                return Err(WorkbenchError::InvalidParameter(
                    "constraint normal is the zero vector".into(),
                ));
            }
        }
        Ok(HPolyhedron { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Scalar], tol: Tol) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.satisfied_by(x, tol))
    }

    /// True when every offset is zero, i.e. the set is a cone with apex 0.
    pub fn is_cone(&self, tol: Tol) -> bool {
        self.constraints.iter().all(|c| c.offset.is_zero_within(tol))
    }

    fn reduced(&self, tol: Tol) -> Reduced {
        let normals: Vec<Vec<Scalar>> = self.constraints.iter().map(|c| c.normal.clone()).collect();
        let lineality = linalg::kernel_basis(&normals, self.dim, tol);
        let complement = if lineality.is_empty() {
            (0..self.dim)
                .map(|i| {
                    let mut e = vec![Scalar::zero(); self.dim];
                    e[i] = Scalar::one();
                    e
                })
                .collect()
        } else {
            linalg::orthogonal_complement(&lineality, self.dim, tol)
        };
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint {
                normal: complement.iter().map(|q| linalg::dot(&c.normal, q)).collect(),
                offset: c.offset.clone(),
                relation: c.relation,
            })
            .collect();
        Reduced { lineality, complement, constraints }
    }

    /// Vertices of the reduced (pointed) polyhedron, in reduced coordinates.
    fn reduced_vertices(r: &Reduced, tol: Tol) -> Vec<Vec<Scalar>> {
        let n = r.dim();
        let eq_idx: Vec<usize> = (0..r.constraints.len())
            .filter(|&i| r.constraints[i].relation == Relation::Eq)
            .collect();
        let le_idx: Vec<usize> = (0..r.constraints.len())
            .filter(|&i| r.constraints[i].relation == Relation::Le)
            .collect();
        let mut vertices: Vec<Vec<Scalar>> = Vec::new();
        let mut push_unique = |v: Vec<Scalar>| {
            if !vertices
                .iter()
                .any(|w| w.iter().zip(&v).all(|(a, b)| a.eq_within(b, tol)))
            {
                vertices.push(v);
            }
        };
        for_each_combination(le_idx.len(), n.min(le_idx.len()), &mut |combo| {
            let tight: Vec<usize> = eq_idx
                .iter()
                .copied()
                .chain(combo.iter().map(|&k| le_idx[k]))
                .collect();
            if tight.len() < n {
                return;
            }
            let rows: Vec<Vec<Scalar>> = tight
                .iter()
                .map(|&i| r.constraints[i].normal.clone())
                .collect();
            let rhs: Vec<Scalar> = tight
                .iter()
                .map(|&i| r.constraints[i].offset.clone())
                .collect();
            if let Some(u) = linalg::solve_unique(&rows, &rhs, n, tol) {
                if r.constraints.iter().all(|c| c.satisfied_by(&u, tol)) {
                    push_unique(u);
                }
            }
        });
        if n == 0 {
            // Zero-dimensional reduced space: the single candidate point is
            // the empty tuple; it is feasible iff no constraint excludes it.
            let origin: Vec<Scalar> = Vec::new();
            if r.constraints.iter().all(|c| c.satisfied_by(&origin, tol)) {
                vertices.push(origin);
            }
        }
        vertices
    }

    /// Extreme rays of the recession cone of the reduced polyhedron.
    fn reduced_rays(r: &Reduced, tol: Tol) -> Vec<Vec<Scalar>> {
        let n = r.dim();
        if n == 0 {
            return Vec::new();
        }
        let eq_normals: Vec<Vec<Scalar>> = r
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .map(|c| c.normal.clone())
            .collect();
        let le_idx: Vec<usize> = (0..r.constraints.len())
            .filter(|&i| r.constraints[i].relation == Relation::Le)
            .collect();
        let mut rays: Vec<Vec<Scalar>> = Vec::new();
        let mut push_unique = |d: Vec<Scalar>| {
            let nd = normalize_direction(&d);
            if !rays
                .iter()
                .any(|w| w.iter().zip(&nd).all(|(a, b)| a.eq_within(b, tol)))
            {
                rays.push(nd);
            }
        };
        for_each_combination(le_idx.len(), n.saturating_sub(1).min(le_idx.len()), &mut |combo| {
            let mut rows = eq_normals.clone();
            rows.extend(combo.iter().map(|&k| r.constraints[le_idx[k]].normal.clone()));
            let kernel = linalg::kernel_basis(&rows, n, tol);
            if kernel.len() != 1 {
                return;
            }
            let d = kernel.into_iter().next().unwrap();
            let neg: Vec<Scalar> = d.iter().map(|v| -v).collect();
            for cand in [d, neg] {
                if r.constraints.iter().all(|c| c.admits_direction(&cand, tol)) {
                    push_unique(cand);
                }
            }
        });
        rays
    }

    /// Vertices in ambient coordinates. Sets with a nontrivial lineality
    /// space have none.
    pub fn vertices(&self, tol: Tol) -> Vec<Vec<Scalar>> {
        let r = self.reduced(tol);
        if !r.lineality.is_empty() {
            return Vec::new();
        }
        Self::reduced_vertices(&r, tol)
            .into_iter()
            .map(|u| r.lift(&u))
            .collect()
    }

    /// Extreme rays of the pointed part of the recession cone, in ambient
    /// coordinates, each normalized.
    pub fn extreme_rays(&self, tol: Tol) -> Vec<Vec<Scalar>> {
        let r = self.reduced(tol);
        Self::reduced_rays(&r, tol)
            .into_iter()
            .map(|u| normalize_direction(&r.lift(&u)))
            .collect()
    }

    /// Basis of the lineality space (directions that move within the set both
    /// ways).
    pub fn lineality_basis(&self, tol: Tol) -> Vec<Vec<Scalar>> {
        self.reduced(tol).lineality
    }

    pub fn is_empty(&self, tol: Tol) -> bool {
        let r = self.reduced(tol);
        Self::reduced_vertices(&r, tol).is_empty()
    }

    /// Support function `sup { c . x : x in self }`; errors on an empty set.
    pub fn support(&self, c: &[Scalar], tol: Tol) -> Result<ExtReal> {
        if c.len() != self.dim {
            return Err(WorkbenchError::DimensionMismatch { expected: self.dim, got: c.len() });
        }
        let r = self.reduced(tol);
        let vertices = Self::reduced_vertices(&r, tol);
        if vertices.is_empty() {
            return Err(WorkbenchError::Infeasible(
                "support of an empty polyhedron".into(),
            ));
        }
        for d in &r.lineality {
            if !linalg::dot(c, d).is_zero_within(tol) {
                return Ok(ExtReal::PosInf);
            }
        }
        let reduced_c: Vec<Scalar> = r.complement.iter().map(|q| linalg::dot(c, q)).collect();
        for ray in Self::reduced_rays(&r, tol) {
            if linalg::dot(&reduced_c, &ray).sign_within(tol) == Ordering::Greater {
                return Ok(ExtReal::PosInf);
            }
        }
        let mut best: Option<Scalar> = None;
        for u in &vertices {
            let val = linalg::dot(&reduced_c, u);
            if best
                .as_ref()
                .map_or(true, |b| val.raw_cmp(b) == Ordering::Greater)
            {
                best = Some(val);
            }
        }
        Ok(ExtReal::Finite(best.unwrap()))
    }

    /// Recession cone: identical normals and relations with zeroed offsets.
    /// Requires a nonempty input, otherwise the cone is meaningless.
    pub fn recession_cone(&self, tol: Tol) -> Result<HPolyhedron> {
        if self.is_empty(tol) {
            return Err(WorkbenchError::Infeasible(
                "recession cone of an empty polyhedron".into(),
            ));
        }
        Ok(HPolyhedron {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint {
                    normal: c.normal.clone(),
                    offset: Scalar::zero(),
                    relation: c.relation,
                })
                .collect(),
        })
    }

    /// Decides equality of two cones by mutual generator containment: every
    /// extreme ray and lineality direction of one must satisfy the other's
    /// constraints. Exact for rational data.
    pub fn cones_equal(a: &HPolyhedron, b: &HPolyhedron, tol: Tol) -> Result<bool> {
        if a.dim != b.dim {
            return Err(WorkbenchError::DimensionMismatch { expected: a.dim, got: b.dim });
        }
        if !a.is_cone(tol) || !b.is_cone(tol) {
            return Err(WorkbenchError::InvalidInput(
                "cone equality requires zero offsets on both sides".into(),
            ));
        }
        let gen_in = |src: &HPolyhedron, dst: &HPolyhedron| -> bool {
            let mut gens = src.extreme_rays(tol);
            for l in src.lineality_basis(tol) {
                gens.push(l.iter().map(|v| -v).collect());
                gens.push(l);
            }
            gens.iter()
                .all(|g| dst.constraints.iter().all(|c| c.admits_direction(g, tol)))
        };
        Ok(gen_in(a, b) && gen_in(b, a))
    }

    /// For a cone consisting of a single extreme ray (no lineality), the
    /// unique primitive integer direction, when the data is rational.
    pub fn primitive_ray(&self, tol: Tol) -> Result<Option<Vec<BigInt>>> {
        if !self.is_cone(tol) {
            return Err(WorkbenchError::InvalidInput(
                "primitive ray direction is only defined for cones".into(),
            ));
        }
        if !self.lineality_basis(tol).is_empty() {
            return Ok(None);
        }
        let rays = self.extreme_rays(tol);
        if rays.len() != 1 {
            return Ok(None);
        }
        Ok(primitive_integer_direction(&rays[0]))
    }

    /// A random point of the polyhedron: a rational convex combination of the
    /// vertices stretched along random ray multiples. `None` when empty.
    pub fn sample_point<R: Rng>(&self, rng: &mut R, tol: Tol) -> Option<Vec<Scalar>> {
        let vertices = self.vertices(tol);
        if vertices.is_empty() {
            return None;
        }
        let mut weights: Vec<i64> = (0..vertices.len()).map(|_| rng.gen_range(0..=8)).collect();
        if weights.iter().all(|&w| w == 0) {
            weights[0] = 1;
        }
        let total: i64 = weights.iter().sum();
        let mut x = vec![Scalar::zero(); self.dim];
        for (w, v) in weights.iter().zip(&vertices) {
            let coef = Scalar::from_ratio(*w, total);
            for (xi, vi) in x.iter_mut().zip(v) {
                let delta = &coef * vi;
                *xi = &*xi + &delta;
            }
        }
        for ray in self.extreme_rays(tol) {
            let coef = Scalar::from_ratio(rng.gen_range(0..=8), 4);
            for (xi, ri) in x.iter_mut().zip(&ray) {
                let delta = &coef * ri;
                *xi = &*xi + &delta;
            }
        }
        Some(x)
    }
}

/// Scales a direction to a canonical representative: primitive integers for
/// rational data, max-component 1 for floats. The orientation is preserved.
fn normalize_direction(d: &[Scalar]) -> Vec<Scalar> {
    if let Some(ints) = primitive_integer_direction(d) {
        return ints
            .into_iter()
            .map(|n| Scalar::from_rational(num_rational::BigRational::from_integer(n)))
            .collect();
    }
    let max = d
        .iter()
        .map(|v| v.to_f64().abs())
        .fold(0.0f64, f64::max);
    d.iter().map(|v| Scalar::from_f64(v.to_f64() / max)).collect()
}

/// Integer direction with content 1 and the same orientation, when every
/// component is rational.
fn primitive_integer_direction(d: &[Scalar]) -> Option<Vec<BigInt>> {
    let mut denial_lcm = BigInt::one();
    let mut rats = Vec::with_capacity(d.len());
    for v in d {
        let r = v.as_rational()?;
        denial_lcm = denial_lcm.lcm(r.denom());
        rats.push(r.clone());
    }
    let mut ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&denial_lcm / r.denom()))
        .collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return None;
    }
    for v in &mut ints {
        *v = &*v / &g;
    }
    Some(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn tol() -> Tol {
        Tol::default()
    }

    fn unit_box(dim: usize) -> HPolyhedron {
        let mut rows = Vec::new();
        for i in 0..dim {
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            rows.push(Constraint::le(e.clone(), s(1)));
            let neg: Vec<Scalar> = e.iter().map(|v| -v).collect();
            rows.push(Constraint::le(neg, s(0)));
        }
        HPolyhedron::new(dim, rows).unwrap()
    }

    #[test]
    fn box_support_and_vertices() {
        let b = unit_box(2);
        assert_eq!(b.vertices(tol()).len(), 4);
        match b.support(&[s(1), s(1)], tol()).unwrap() {
            ExtReal::Finite(v) => assert!(v.eq_within(&s(2), tol())),
            _ => panic!("expected finite support"),
        }
        assert!(!b.is_empty(tol()));
    }

    #[test]
    fn halfline_support_is_infinite_uphill() {
        // { x >= 0 } in R^1.
        let h = HPolyhedron::new(1, vec![Constraint::le(vec![s(-1)], s(0))]).unwrap();
        assert!(matches!(h.support(&[s(1)], tol()).unwrap(), ExtReal::PosInf));
        match h.support(&[s(-1)], tol()).unwrap() {
            ExtReal::Finite(v) => assert!(v.eq_within(&s(0), tol())),
            _ => panic!("bounded downhill"),
        }
    }

    #[test]
    fn line_without_vertices_is_handled_by_reduction() {
        // { x2 = 0 } in R^2: lineality along x1.
        let line = HPolyhedron::new(2, vec![Constraint::eq(vec![s(0), s(1)], s(0))]).unwrap();
        assert!(!line.is_empty(tol()));
        assert!(line.vertices(tol()).is_empty());
        assert_eq!(line.lineality_basis(tol()).len(), 1);
        // Bounded orthogonal to the line, unbounded along it.
        match line.support(&[s(0), s(1)], tol()).unwrap() {
            ExtReal::Finite(v) => assert!(v.eq_within(&s(0), tol())),
            _ => panic!("orthogonal direction is bounded"),
        }
        assert!(matches!(line.support(&[s(1), s(0)], tol()).unwrap(), ExtReal::PosInf));
    }

    #[test]
    fn empty_polyhedron_is_detected_and_rejected() {
        let empty = HPolyhedron::new(
            1,
            vec![
                Constraint::le(vec![s(1)], s(0)),
                Constraint::le(vec![s(-1)], s(-1)),
            ],
        )
        .unwrap();
        assert!(empty.is_empty(tol()));
        assert!(matches!(
            empty.support(&[s(1)], tol()),
            Err(WorkbenchError::Infeasible(_))
        ));
        assert!(matches!(
            empty.recession_cone(tol()),
            Err(WorkbenchError::Infeasible(_))
        ));
    }

    #[test]
    fn recession_cone_zeroes_offsets_and_is_idempotent() {
        let p = HPolyhedron::new(
            4,
            vec![
                Constraint::eq(vec![s(1), s(0), s(0), s(0)], s(1)),
                Constraint::eq(vec![s(0), s(1), s(0), s(0)], s(2)),
                Constraint::le(vec![s(0), s(0), s(0), s(-1)], s(0)),
                Constraint::le(vec![s(0), s(0), s(-1), s(1)], s(0)),
            ],
        )
        .unwrap();
        let cone = p.recession_cone(tol()).unwrap();
        assert!(cone.is_cone(tol()));
        let twice = cone.recession_cone(tol()).unwrap();
        assert!(HPolyhedron::cones_equal(&cone, &twice, tol()).unwrap());
        // The wedge has exactly the two expected extreme rays.
        let rays = cone.extreme_rays(tol());
        assert_eq!(rays.len(), 2);
        let has = |target: [i64; 4]| {
            rays.iter().any(|r| {
                r.iter()
                    .zip(target.iter())
                    .all(|(a, b)| a.eq_within(&s(*b), tol()))
            })
        };
        assert!(has([0, 0, 1, 0]));
        assert!(has([0, 0, 1, 1]));
    }

    #[test]
    fn cone_equality_distinguishes_rays_from_wedges() {
        let wedge = HPolyhedron::new(
            4,
            vec![
                Constraint::eq(vec![s(1), s(0), s(0), s(0)], s(0)),
                Constraint::eq(vec![s(0), s(1), s(0), s(0)], s(0)),
                Constraint::le(vec![s(0), s(0), s(0), s(-1)], s(0)),
                Constraint::le(vec![s(0), s(0), s(-1), s(1)], s(0)),
            ],
        )
        .unwrap();
        // Ray { x4 = (1/2) x3, x4 >= 0 } inside the same two pins.
        let ray = HPolyhedron::new(
            4,
            vec![
                Constraint::eq(vec![s(1), s(0), s(0), s(0)], s(0)),
                Constraint::eq(vec![s(0), s(1), s(0), s(0)], s(0)),
                Constraint::eq(vec![s(0), s(0), Scalar::from_ratio(-1, 2), s(1)], s(0)),
                Constraint::le(vec![s(0), s(0), s(0), s(-1)], s(0)),
            ],
        )
        .unwrap();
        assert!(!HPolyhedron::cones_equal(&wedge, &ray, tol()).unwrap());
        assert!(HPolyhedron::cones_equal(&wedge, &wedge, tol()).unwrap());
        let prim = ray.primitive_ray(tol()).unwrap().unwrap();
        let expected: Vec<BigInt> = [0, 0, 2, 1].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(prim, expected);
        // Offsets must be zero for cone comparisons.
        let not_cone = HPolyhedron::new(1, vec![Constraint::le(vec![s(1)], s(1))]).unwrap();
        assert!(HPolyhedron::cones_equal(&not_cone, &not_cone, tol()).is_err());
    }

    #[test]
    fn degenerate_optimal_face_stays_finite() {
        // Wedge cone; objective flat along one unbounded face: the supremum
        // is 0 and must not be reported as infinite.
        let wedge = HPolyhedron::new(
            2,
            vec![
                Constraint::le(vec![s(0), s(-1)], s(0)),
                Constraint::le(vec![s(-1), s(1)], s(0)),
            ],
        )
        .unwrap();
        match wedge.support(&[s(0), s(-1)], tol()).unwrap() {
            ExtReal::Finite(v) => assert!(v.eq_within(&s(0), tol())),
            other => panic!("expected finite 0, got {other:?}"),
        }
        assert!(matches!(wedge.support(&[s(1), s(0)], tol()).unwrap(), ExtReal::PosInf));
    }

    #[test]
    fn rejects_zero_normals_and_mismatched_dims() {
        assert!(HPolyhedron::new(2, vec![Constraint::le(vec![s(0), s(0)], s(1))]).is_err());
        assert!(HPolyhedron::new(2, vec![Constraint::le(vec![s(1)], s(1))]).is_err());
    }

    #[test]
    fn sample_points_are_members() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let p = HPolyhedron::new(
            2,
            vec![
                Constraint::le(vec![s(-1), s(0)], s(0)),
                Constraint::le(vec![s(1), s(-1)], s(0)),
            ],
        )
        .unwrap();
        for _ in 0..50 {
            let x = p.sample_point(&mut rng, tol()).unwrap();
            assert!(p.contains(&x, tol()));
            assert!(x.iter().all(|v| v.is_exact()));
        }
    }
}
