//! Dense Gaussian elimination over [`Scalar`], sized for the tiny systems
//! (dimension at most 4, a handful of rows) that vertex and ray enumeration
//! produce. Exact rows pivot on any nonzero entry; float rows pivot on the
//! largest magnitude and treat entries within `tol` of zero as zero.

use crate::scalar::{Scalar, Tol};

/// Reduces `m` (rows of equal width) to reduced row echelon form in place and
/// returns the pivot column per pivot row, in order.
pub fn rref(m: &mut Vec<Vec<Scalar>>, tol: Tol) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Pick the largest-magnitude candidate pivot; for exact rows any
        // nonzero entry works but the choice is harmless.
        let mut best: Option<(usize, f64)> = None;
        for i in r..rows {
            if !m[i][c].is_zero_within(tol) {
                let mag = m[i][c].to_f64().abs();
                if best.map_or(true, |(_, b)| mag > b) {
                    best = Some((i, mag));
                }
            }
        }
        let Some((pivot_row, _)) = best else { continue };
        m.swap(r, pivot_row);
        let inv = {
            let p = m[r][c].clone();
            move |v: &Scalar| v / &p
        };
        for j in 0..cols {
            m[r][j] = inv(&m[r][j]);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_within(tol) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(matrix: &[Vec<Scalar>], tol: Tol) -> usize {
    let mut m = matrix.to_vec();
    rref(&mut m, tol).len()
}

/// Basis of the null space of `matrix` (width `cols`). An empty matrix has
/// the full standard basis as its kernel.
pub fn kernel_basis(matrix: &[Vec<Scalar>], cols: usize, tol: Tol) -> Vec<Vec<Scalar>> {
    let mut m = matrix.to_vec();
    let pivots = rref(&mut m, tol);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Solves `matrix * x = rhs` when the solution is unique; returns `None` when
/// the system is inconsistent or underdetermined. The system may have more
/// rows than `cols`.
pub fn solve_unique(matrix: &[Vec<Scalar>], rhs: &[Scalar], cols: usize, tol: Tol) -> Option<Vec<Scalar>> {
    let mut aug: Vec<Vec<Scalar>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, tol);
    // A pivot in the appended column means the system is inconsistent.
    if pivots.contains(&cols) {
        return None;
    }
    if pivots.len() < cols {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Dot product with exact/float promotion.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Basis of the subspace orthogonal to every vector in `span`, computed with
/// rational-friendly Gram-Schmidt (no square roots, only projections).
pub fn orthogonal_complement(span: &[Vec<Scalar>], dim: usize, tol: Tol) -> Vec<Vec<Scalar>> {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..dim {
        let mut v = vec![Scalar::zero(); dim];
        v[i] = Scalar::one();
        for w in span.iter().chain(basis.iter()) {
            let denom = dot(w, w);
            if denom.is_zero_within(tol) {
                continue;
            }
            let coef = &dot(&v, w) / &denom;
            for (vj, wj) in v.iter_mut().zip(w) {
                let delta = &coef * wj;
                *vj = &*vj - &delta;
            }
        }
        if v.iter().any(|x| !x.is_zero_within(tol)) {
            basis.push(v);
        }
        if span.len() + basis.len() == dim {
            break;
        }
    }
    basis
}
