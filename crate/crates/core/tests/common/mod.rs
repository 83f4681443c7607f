//! Shared helpers for integration tests: an independent convex-hull oracle
//! and a seeded random polygon generator built on it.

use micp_workbench::geometry::ConvexPolygon;
use micp_workbench::scalar::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// Monotone-chain convex hull with exact comparisons, returning strict hull
/// vertices counterclockwise. Deliberately independent of the library's
/// polygon code: it is the oracle the library is tested against.
pub fn convex_hull(mut pts: Vec<[Scalar; 2]>) -> Vec<[Scalar; 2]> {
    pts.sort_by(|a, b| a[0].raw_cmp(&b[0]).then_with(|| a[1].raw_cmp(&b[1])));
    pts.dedup_by(|a, b| {
        a[0].raw_cmp(&b[0]) == Ordering::Equal && a[1].raw_cmp(&b[1]) == Ordering::Equal
    });
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &[Scalar; 2], a: &[Scalar; 2], b: &[Scalar; 2]| -> Scalar {
        let ax = &a[0] - &o[0];
        let ay = &a[1] - &o[1];
        let bx = &b[0] - &o[0];
        let by = &b[1] - &o[1];
        &(&ax * &by) - &(&ay * &bx)
    };
    let keep_left = |chain: &[[Scalar; 2]], p: &[Scalar; 2]| -> bool {
        chain.len() < 2
            || cross(&chain[chain.len() - 2], &chain[chain.len() - 1], p)
                .raw_cmp(&Scalar::zero())
                == Ordering::Greater
    };
    let mut lower: Vec<[Scalar; 2]> = Vec::new();
    for p in &pts {
        while !keep_left(&lower, p) {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<[Scalar; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while !keep_left(&upper, p) {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Random full-dimensional polygon with exact rational vertices and at most
/// `max_points` hull vertices.
pub fn random_polygon(rng: &mut ChaCha8Rng, max_points: usize) -> ConvexPolygon {
    loop {
        let k = rng.gen_range(3..=max_points.max(3));
        let pts: Vec<[Scalar; 2]> = (0..k)
            .map(|_| {
                let den = [1, 2, 4, 8][rng.gen_range(0..4)];
                [
                    Scalar::from_ratio(rng.gen_range(-24..=24), den),
                    Scalar::from_ratio(rng.gen_range(-24..=24), den),
                ]
            })
            .collect();
        let hull = convex_hull(pts);
        if hull.len() >= 3 {
            if let Ok(p) = ConvexPolygon::new(hull) {
                return p;
            }
        }
    }
}
