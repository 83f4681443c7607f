//! Convex polygons in the plane with counterclockwise vertex cycles.
//!
//! The vertex list is the primary representation; the halfplane form is
//! derived from it. Polygons built from rational data stay rational through
//! translation, scaling, Minkowski sums and area computations.

use crate::error::WorkbenchError;
use crate::scalar::{ExtReal, Scalar, Tol};
use crate::Result;
use std::cmp::Ordering;

/// One halfplane `normal . x <= offset`.
#[derive(Clone, Debug)]
pub struct HalfPlane {
    pub normal: [Scalar; 2],
    pub offset: Scalar,
}

/// A convex polygon. Full-dimensional polygons have at least three vertices
/// in strictly convex counterclockwise order; single points and segments are
/// degenerate values that only dedicated constructors produce (Minkowski
/// summands, mostly).
#[derive(Clone, Debug)]
pub struct ConvexPolygon {
    vertices: Vec<[Scalar; 2]>,
}

fn cross(a: &[Scalar; 2], b: &[Scalar; 2]) -> Scalar {
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

fn dot2(a: &[Scalar; 2], b: &[Scalar; 2]) -> Scalar {
    &(&a[0] * &b[0]) + &(&a[1] * &b[1])
}

fn sub2(a: &[Scalar; 2], b: &[Scalar; 2]) -> [Scalar; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn add2(a: &[Scalar; 2], b: &[Scalar; 2]) -> [Scalar; 2] {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

/// Orders edge vectors by polar angle in [0, 2pi), starting at the positive
/// x-axis. Raw signs keep the order total; near-parallel float edges are
/// separated arbitrarily but deterministically and the canonicalization pass
/// afterwards merges them.
fn angle_cmp(a: &[Scalar; 2], b: &[Scalar; 2]) -> Ordering {
    let half = |v: &[Scalar; 2]| -> u8 {
        match v[1].raw_cmp(&Scalar::zero()) {
            Ordering::Greater => 0,
            Ordering::Less => 1,
            Ordering::Equal => {
                if v[0].raw_cmp(&Scalar::zero()) == Ordering::Greater {
                    0
                } else {
                    1
                }
            }
        }
    };
    match half(a).cmp(&half(b)) {
        Ordering::Equal => Scalar::zero().raw_cmp(&cross(a, b)),
        other => other,
    }
}

fn lowest_vertex_index(vs: &[[Scalar; 2]]) -> usize {
    let mut best = 0;
    for i in 1..vs.len() {
        let c = vs[i][1]
            .raw_cmp(&vs[best][1])
            .then_with(|| vs[i][0].raw_cmp(&vs[best][0]));
        if c == Ordering::Less {
            best = i;
        }
    }
    best
}

/// Removes consecutive duplicates (within `tol`) and middle points of
/// collinear triples from a vertex cycle.
fn canonical_cycle(mut vs: Vec<[Scalar; 2]>, tol: Tol) -> Vec<[Scalar; 2]> {
    // Dedupe, including across the wrap-around.
    let mut deduped: Vec<[Scalar; 2]> = Vec::with_capacity(vs.len());
    for v in vs.drain(..) {
        if let Some(last) = deduped.last() {
            if last[0].eq_within(&v[0], tol) && last[1].eq_within(&v[1], tol) {
                continue;
            }
        }
        deduped.push(v);
    }
    while deduped.len() > 1 {
        let first = deduped[0].clone();
        let last = deduped.last().unwrap();
        if last[0].eq_within(&first[0], tol) && last[1].eq_within(&first[1], tol) {
            deduped.pop();
        } else {
            break;
        }
    }
    // Drop collinear middles until the cycle is stable.
    loop {
        let n = deduped.len();
        if n < 3 {
            return deduped;
        }
        let mut kept: Vec<[Scalar; 2]> = Vec::with_capacity(n);
        let mut changed = false;
        for i in 0..n {
            let prev = &deduped[(i + n - 1) % n];
            let cur = &deduped[i];
            let next = &deduped[(i + 1) % n];
            let c = cross(&sub2(cur, prev), &sub2(next, cur));
            if c.is_zero_within(tol) {
                changed = true;
            } else {
                kept.push(cur.clone());
            }
        }
        if !changed {
            return deduped;
        }
        deduped = kept;
    }
}

impl ConvexPolygon {
    /// Builds a full-dimensional polygon from a counterclockwise vertex cycle.
    /// Repeated and collinear vertices are canonicalized away; anything that
    /// is not strictly convex and counterclockwise afterwards is rejected.
    pub fn new(vertices: Vec<[Scalar; 2]>) -> Result<Self> {
        Self::with_tol(vertices, Tol::default())
    }

    pub fn with_tol(vertices: Vec<[Scalar; 2]>, tol: Tol) -> Result<Self> {
        let vs = canonical_cycle(vertices, tol);
        if vs.len() < 3 {
            return Err(WorkbenchError::InvalidParameter(format!(
                "polygon needs at least 3 non-collinear vertices, {} remain after canonicalization",
                vs.len()
            )));
        }
        let n = vs.len();
        for i in 0..n {
            let a = sub2(&vs[(i + 1) % n], &vs[i]);
            let b = sub2(&vs[(i + 2) % n], &vs[(i + 1) % n]);
            if cross(&a, &b).sign_within(tol) != Ordering::Greater {
                return Err(WorkbenchError::InvalidParameter(
                    "vertex cycle is not strictly convex counterclockwise".into(),
                ));
            }
        }
        Ok(ConvexPolygon { vertices: vs })
    }

    /// Degenerate single-point polygon (identity-style Minkowski summand).
    pub fn point(p: [Scalar; 2]) -> Self {
        ConvexPolygon { vertices: vec![p] }
    }

    /// Degenerate segment polygon with distinct endpoints.
    pub fn segment(a: [Scalar; 2], b: [Scalar; 2]) -> Result<Self> {
        let tol = Tol::default();
        if a[0].eq_within(&b[0], tol) && a[1].eq_within(&b[1], tol) {
            return Err(WorkbenchError::InvalidParameter(
                "segment endpoints coincide".into(),
            ));
        }
        Ok(ConvexPolygon { vertices: vec![a, b] })
    }

    fn from_cycle_relaxed(vertices: Vec<[Scalar; 2]>, tol: Tol) -> Self {
        let vs = canonical_cycle(vertices, tol);
        assert!(!vs.is_empty(), "empty vertex cycle");
        ConvexPolygon { vertices: vs }
    }

    /// Regular polygon with `sides >= 3` vertices on the circle of the given
    /// radius around `center`, at angles `2 pi k / sides` for `k = 1..=sides`.
    /// Vertices are floats (trigonometry), so downstream comparisons are
    /// tolerance-based.
    pub fn regular(sides: u64, radius: &Scalar, center: &[Scalar; 2]) -> Result<Self> {
        if sides < 3 {
            return Err(WorkbenchError::InvalidParameter(format!(
                "regular polygon needs at least 3 sides, got {sides}"
            )));
        }
        if radius.sign_within(Tol::default()) != Ordering::Greater {
            return Err(WorkbenchError::InvalidParameter(
                "regular polygon radius must be positive".into(),
            ));
        }
        let r = radius.to_f64();
        let (cx, cy) = (center[0].to_f64(), center[1].to_f64());
        let mut vertices = Vec::with_capacity(sides as usize);
        for k in 1..=sides {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (sides as f64);
            vertices.push([
                Scalar::from_f64(cx + r * angle.cos()),
                Scalar::from_f64(cy + r * angle.sin()),
            ]);
        }
        ConvexPolygon::with_tol(vertices, Tol(1e-12))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[[Scalar; 2]] {
        &self.vertices
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }

    /// Halfplane representation. Full-dimensional polygons get one row per
    /// edge (each vertex tight on exactly two rows); a segment gets its line
    /// as an opposing pair plus end caps; a point gets coordinate pins.
    pub fn hrep(&self) -> Vec<HalfPlane> {
        match self.vertices.len() {
            1 => {
                let v = &self.vertices[0];
                vec![
                    HalfPlane { normal: [Scalar::one(), Scalar::zero()], offset: v[0].clone() },
                    HalfPlane { normal: [-&Scalar::one(), Scalar::zero()], offset: -&v[0] },
                    HalfPlane { normal: [Scalar::zero(), Scalar::one()], offset: v[1].clone() },
                    HalfPlane { normal: [Scalar::zero(), -&Scalar::one()], offset: -&v[1] },
                ]
            }
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                let d = sub2(b, a);
                let n = [d[1].clone(), -&d[0]];
                let neg_n = [-&n[0], -&n[1]];
                let neg_d = [-&d[0], -&d[1]];
                vec![
                    HalfPlane { offset: dot2(&n, a), normal: n.clone() },
                    HalfPlane { offset: dot2(&neg_n, a), normal: neg_n },
                    HalfPlane { offset: dot2(&d, b), normal: d.clone() },
                    HalfPlane { offset: dot2(&neg_d, a), normal: neg_d },
                ]
            }
            n => {
                let mut rows = Vec::with_capacity(n);
                for i in 0..n {
                    let v = &self.vertices[i];
                    let w = &self.vertices[(i + 1) % n];
                    let e = sub2(w, v);
                    let normal = [e[1].clone(), -&e[0]];
                    let offset = dot2(&normal, v);
                    rows.push(HalfPlane { normal, offset });
                }
                rows
            }
        }
    }

    /// Point membership: every halfplane within `tol`.
    pub fn contains(&self, p: &[Scalar; 2], tol: Tol) -> bool {
        self.hrep()
            .iter()
            .all(|h| dot2(&h.normal, p).le_within(&h.offset, tol))
    }

    /// Whether the origin-centered closed ball of radius `rho` is contained
    /// in the polygon. Requires a full-dimensional polygon with the origin in
    /// its interior; the criterion is `offset / |normal| >= rho` on each edge.
    pub fn contains_ball(&self, rho: &Scalar, tol: Tol) -> Result<bool> {
        if !self.is_full_dimensional() {
            return Err(WorkbenchError::InvalidInput(
                "ball containment needs a full-dimensional polygon".into(),
            ));
        }
        let rows = self.hrep();
        if rows
            .iter()
            .any(|h| h.offset.sign_within(tol) != Ordering::Greater)
        {
            return Err(WorkbenchError::InvalidInput(
                "ball containment needs the origin in the polygon's interior".into(),
            ));
        }
        let rho_f = rho.to_f64();
        Ok(rows.iter().all(|h| {
            let norm = dot2(&h.normal, &h.normal).sqrt_f64();
            h.offset.to_f64() / norm >= rho_f - tol.0
        }))
    }

    /// Whether the polygon is contained in the origin-centered closed ball of
    /// radius `rho`. Exact data is compared exactly via squared norms.
    pub fn within_ball(&self, rho: &Scalar, tol: Tol) -> bool {
        let rho_sq = rho * rho;
        self.vertices.iter().all(|v| {
            let norm_sq = dot2(v, v);
            if norm_sq.is_exact() && rho_sq.is_exact() {
                norm_sq.le_within(&rho_sq, tol)
            } else {
                Scalar::from_f64(norm_sq.sqrt_f64()).le_within(rho, tol)
            }
        })
    }

    /// Minkowski sum by merging the two edge fans in angular order. Exact
    /// inputs give an exact sum. Degenerate operands degrade gracefully:
    /// adding a single point translates, adding a segment extrudes.
    pub fn minkowski_sum(&self, other: &ConvexPolygon, tol: Tol) -> ConvexPolygon {
        if self.vertices.len() == 1 {
            return other.translate(&self.vertices[0]);
        }
        if other.vertices.len() == 1 {
            return self.translate(&other.vertices[0]);
        }
        let p = rotate_to_lowest(&self.vertices);
        let q = rotate_to_lowest(&other.vertices);
        let pe = cycle_edges(&p);
        let qe = cycle_edges(&q);
        let mut result = Vec::with_capacity(pe.len() + qe.len());
        let mut cur = add2(&p[0], &q[0]);
        let (mut i, mut j) = (0usize, 0usize);
        while i < pe.len() || j < qe.len() {
            result.push(cur.clone());
            let step = if i == pe.len() {
                let e = qe[j].clone();
                j += 1;
                e
            } else if j == qe.len() {
                let e = pe[i].clone();
                i += 1;
                e
            } else {
                match angle_cmp(&pe[i], &qe[j]) {
                    Ordering::Less => {
                        let e = pe[i].clone();
                        i += 1;
                        e
                    }
                    Ordering::Greater => {
                        let e = qe[j].clone();
                        j += 1;
                        e
                    }
                    Ordering::Equal => {
                        let e = add2(&pe[i], &qe[j]);
                        i += 1;
                        j += 1;
                        e
                    }
                }
            };
            cur = add2(&cur, &step);
        }
        ConvexPolygon::from_cycle_relaxed(result, tol)
    }

    /// Signed shoelace area; counterclockwise cycles give the positive area.
    /// Exact for exact vertices. Degenerate polygons have area zero.
    pub fn area(&self) -> Scalar {
        let n = self.vertices.len();
        if n < 3 {
            return Scalar::zero();
        }
        let mut twice = Scalar::zero();
        for i in 0..n {
            let v = &self.vertices[i];
            let w = &self.vertices[(i + 1) % n];
            twice = &twice + &cross(v, w);
        }
        twice.half()
    }

    /// Support function `max over vertices of c . v`; always finite.
    pub fn support(&self, c: &[Scalar; 2]) -> ExtReal {
        let mut best: Option<Scalar> = None;
        for v in &self.vertices {
            let val = dot2(c, v);
            if best
                .as_ref()
                .map_or(true, |b| val.raw_cmp(b) == Ordering::Greater)
            {
                best = Some(val);
            }
        }
        ExtReal::Finite(best.expect("polygon has at least one vertex"))
    }

    pub fn translate(&self, t: &[Scalar; 2]) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|v| add2(v, t)).collect(),
        }
    }

    /// Scales about the origin by a strictly positive factor.
    pub fn scale(&self, s: &Scalar) -> Result<ConvexPolygon> {
        if s.sign_within(Tol::default()) != Ordering::Greater {
            return Err(WorkbenchError::InvalidParameter(
                "scale factor must be positive".into(),
            ));
        }
        Ok(ConvexPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [&v[0] * s, &v[1] * s])
                .collect(),
        })
    }

    /// Edge vectors in cycle order (empty for a point).
    pub fn edge_vectors(&self) -> Vec<[Scalar; 2]> {
        if self.vertices.len() < 2 {
            return Vec::new();
        }
        cycle_edges(&self.vertices)
    }

    /// Vertex average; an interior point for full-dimensional polygons.
    pub fn vertex_centroid(&self) -> [Scalar; 2] {
        let n = Scalar::from_int(self.vertices.len() as i64);
        let mut acc = [Scalar::zero(), Scalar::zero()];
        for v in &self.vertices {
            acc = add2(&acc, v);
        }
        [&acc[0] / &n, &acc[1] / &n]
    }

    /// True when the two vertex cycles agree up to rotation, within `tol`.
    pub fn same_cycle(&self, other: &ConvexPolygon, tol: Tol) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() {
            return false;
        }
        (0..n).any(|shift| {
            (0..n).all(|i| {
                let a = &self.vertices[i];
                let b = &other.vertices[(i + shift) % n];
                a[0].eq_within(&b[0], tol) && a[1].eq_within(&b[1], tol)
            })
        })
    }
}

fn rotate_to_lowest(vs: &[[Scalar; 2]]) -> Vec<[Scalar; 2]> {
    let k = lowest_vertex_index(vs);
    let mut out = Vec::with_capacity(vs.len());
    out.extend_from_slice(&vs[k..]);
    out.extend_from_slice(&vs[..k]);
    out
}

/// Edge vectors of the closed cycle; a two-vertex "cycle" contributes the
/// segment direction and its reverse.
fn cycle_edges(vs: &[[Scalar; 2]]) -> Vec<[Scalar; 2]> {
    let n = vs.len();
    (0..n).map(|i| sub2(&vs[(i + 1) % n], &vs[i])).collect()
}
