//! Shape-equivalence notions for planar convex bodies, ordered strongest to
//! weakest: translation, affine, combinatorial. A family of equal-volume
//! slices of a valid formulation with `d` integer variables can realize at
//! most `2^d` translation classes, which makes the class count itself a
//! testable quantity.

use crate::error::WorkbenchError;
use crate::geometry::ConvexPolygon;
use crate::report::ShapeClassReport;
use crate::scalar::{Scalar, Tol};
use crate::Result;
use std::cmp::Ordering;

/// Decides whether `q = s * p + t` for some scale `s > 0` and offset `t`,
/// returning the witness pair. Works by matching the counterclockwise edge
/// sequences under one cyclic shift and a single proportionality constant.
pub fn homothety_between(
    p: &ConvexPolygon,
    q: &ConvexPolygon,
    tol: Tol,
) -> Option<(Scalar, [Scalar; 2])> {
    if !p.is_full_dimensional() || !q.is_full_dimensional() {
        return None;
    }
    let m = p.vertex_count();
    if q.vertex_count() != m {
        return None;
    }
    let ep = p.edge_vectors();
    let eq = q.edge_vectors();
    let pv = p.vertices();
    let qv = q.vertices();
    'shift: for k in 0..m {
        // Proportionality constant from the dominant component of the first
        // edge; the verification loop rejects mismatched guesses.
        let c = if ep[0][0].abs().raw_cmp(&ep[0][1].abs()) == Ordering::Less { 1 } else { 0 };
        if ep[0][c].is_zero_within(tol) {
            return None;
        }
        let s = &eq[k][c] / &ep[0][c];
        if s.sign_within(tol) != Ordering::Greater {
            continue;
        }
        for i in 0..m {
            let image = &eq[(i + k) % m];
            for c in 0..2 {
                if !(&s * &ep[i][c]).eq_within(&image[c], tol) {
                    continue 'shift;
                }
            }
        }
        // Edge i of p runs from vertex i, so vertex i maps to vertex i + k.
        let t = [
            &qv[k][0] - &(&s * &pv[0][0]),
            &qv[k][1] - &(&s * &pv[0][1]),
        ];
        for i in 0..m {
            let w = &qv[(i + k) % m];
            for c in 0..2 {
                if !(&(&s * &pv[i][c]) + &t[c]).eq_within(&w[c], tol) {
                    continue 'shift;
                }
            }
        }
        return Some((s, t));
    }
    None
}

/// Translation equivalence: homothety with unit scale.
pub fn translation_equivalent(p: &ConvexPolygon, q: &ConvexPolygon, tol: Tol) -> bool {
    matches!(homothety_between(p, q, tol), Some((s, _)) if s.eq_within(&Scalar::one(), tol))
}

/// Affine equivalence: `q = A p + b` for some invertible `A`. The map is
/// solved from three consecutive vertex correspondences and then checked on
/// every vertex, over all cyclic shifts and both orientations of `q`.
pub fn affine_equivalent(p: &ConvexPolygon, q: &ConvexPolygon, tol: Tol) -> bool {
    if !p.is_full_dimensional() || !q.is_full_dimensional() {
        return false;
    }
    let m = p.vertex_count();
    if q.vertex_count() != m {
        return false;
    }
    let pv = p.vertices();
    let forward: Vec<[Scalar; 2]> = q.vertices().to_vec();
    let backward: Vec<[Scalar; 2]> = q.vertices().iter().rev().cloned().collect();
    for qv in [&forward, &backward] {
        'shift: for k in 0..m {
            let w = |i: usize| -> &[Scalar; 2] { &qv[(i + k) % m] };
            let d1 = [&pv[1][0] - &pv[0][0], &pv[1][1] - &pv[0][1]];
            let d2 = [&pv[2][0] - &pv[0][0], &pv[2][1] - &pv[0][1]];
            let e1 = [&w(1)[0] - &w(0)[0], &w(1)[1] - &w(0)[1]];
            let e2 = [&w(2)[0] - &w(0)[0], &w(2)[1] - &w(0)[1]];
            // Consecutive polygon vertices are never collinear, so the
            // source frame (d1, d2) is invertible.
            let det = &(&d1[0] * &d2[1]) - &(&d1[1] * &d2[0]);
            if det.is_zero_within(tol) {
                return false;
            }
            let a = [
                [
                    &(&(&e1[0] * &d2[1]) - &(&e2[0] * &d1[1])) / &det,
                    &(&(&e2[0] * &d1[0]) - &(&e1[0] * &d2[0])) / &det,
                ],
                [
                    &(&(&e1[1] * &d2[1]) - &(&e2[1] * &d1[1])) / &det,
                    &(&(&e2[1] * &d1[0]) - &(&e1[1] * &d2[0])) / &det,
                ],
            ];
            let det_a = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
            if det_a.is_zero_within(tol) {
                continue;
            }
            let b = [
                &w(0)[0] - &(&(&a[0][0] * &pv[0][0]) + &(&a[0][1] * &pv[0][1])),
                &w(0)[1] - &(&(&a[1][0] * &pv[0][0]) + &(&a[1][1] * &pv[0][1])),
            ];
            for i in 0..m {
                for r in 0..2 {
                    let image =
                        &(&(&(&a[r][0] * &pv[i][0]) + &(&a[r][1] * &pv[i][1])) + &b[r]);
                    if !image.eq_within(&w(i)[r], tol) {
                        continue 'shift;
                    }
                }
            }
            return true;
        }
    }
    false
}

/// Combinatorial equivalence of planar polytopes: the face lattice of a
/// polygon is determined by its vertex count.
pub fn combinatorially_equivalent(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    p.is_full_dimensional() && q.is_full_dimensional() && p.vertex_count() == q.vertex_count()
}

/// Which equivalence notion a classification run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeNotion {
    Translation,
    Affine,
    Combinatorial,
}

impl ShapeNotion {
    pub fn label(&self) -> &'static str {
        match self {
            ShapeNotion::Translation => "translation",
            ShapeNotion::Affine => "affine",
            ShapeNotion::Combinatorial => "combinatorial",
        }
    }

    fn equivalent(&self, p: &ConvexPolygon, q: &ConvexPolygon, tol: Tol) -> bool {
        match self {
            ShapeNotion::Translation => translation_equivalent(p, q, tol),
            ShapeNotion::Affine => affine_equivalent(p, q, tol),
            ShapeNotion::Combinatorial => combinatorially_equivalent(p, q),
        }
    }
}

/// Partitions `family` into equivalence classes under `notion`, greedily
/// against the first member of each class (valid because all three notions
/// are transitive).
pub fn shape_classes(
    notion: ShapeNotion,
    labels: &[String],
    family: &[ConvexPolygon],
    tol: Tol,
) -> Result<ShapeClassReport> {
    if labels.len() != family.len() {
        return Err(WorkbenchError::DimensionMismatch {
            expected: family.len(),
            got: labels.len(),
        });
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (idx, poly) in family.iter().enumerate() {
        let found = classes
            .iter_mut()
            .find(|class| notion.equivalent(&family[class[0]], poly, tol));
        match found {
            Some(class) => class.push(idx),
            None => classes.push(vec![idx]),
        }
    }
    Ok(ShapeClassReport {
        notion: notion.label().to_string(),
        labels: labels.to_vec(),
        classes,
    })
}

/// Translation classes of a lattice-indexed slice family.
pub fn translation_classes(
    family: &[(Vec<i64>, ConvexPolygon)],
    tol: Tol,
) -> Result<ShapeClassReport> {
    let labels: Vec<String> = family.iter().map(|(z, _)| format!("z={z:?}")).collect();
    let polys: Vec<ConvexPolygon> = family.iter().map(|(_, p)| p.clone()).collect();
    shape_classes(ShapeNotion::Translation, &labels, &polys, tol)
}
