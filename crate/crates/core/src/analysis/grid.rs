//! Finite direction grids over which support-function probes are evaluated.

use crate::error::WorkbenchError;
use crate::scalar::Scalar;
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A finite set of nonzero, pairwise distinct probe directions of one fixed
/// dimension. Probes quantify over "all directions c"; a grid is the sampled
/// stand-in.
#[derive(Clone, Debug)]
pub struct DirectionGrid {
    dim: usize,
    directions: Vec<Vec<Scalar>>,
}

impl DirectionGrid {
    /// `count` planar unit directions at evenly spaced angles starting from
    /// the positive x-axis.
    pub fn planar(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(WorkbenchError::InvalidParameter(
                "direction grid needs at least one direction".into(),
            ));
        }
        let mut directions = Vec::with_capacity(count);
        for k in 0..count {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (count as f64);
            directions.push(vec![
                Scalar::from_f64(angle.cos()),
                Scalar::from_f64(angle.sin()),
            ]);
        }
        Self::validated(2, directions)
    }

    /// The default planar grid: 64 evenly spaced directions.
    pub fn planar_default() -> Self {
        Self::planar(64).expect("64 planar directions are distinct")
    }

    /// The `2 * dim` signed coordinate directions, exact.
    pub fn axes(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(WorkbenchError::InvalidParameter(
                "direction grid needs a positive dimension".into(),
            ));
        }
        let mut directions = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for sign in [1i64, -1] {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = Scalar::from_int(sign);
                directions.push(v);
            }
        }
        Self::validated(dim, directions)
    }

    /// `count` seeded approximately-uniform unit directions; deterministic in
    /// `seed`.
    pub fn seeded(dim: usize, count: usize, seed: u64) -> Result<Self> {
        if dim == 0 || count == 0 {
            return Err(WorkbenchError::InvalidParameter(
                "direction grid needs a positive dimension and count".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut directions = Vec::with_capacity(count);
        while directions.len() < count {
            let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            // Rejection keeps the normalized draws uniform and well scaled.
            if !(0.2..=1.0).contains(&norm) {
                continue;
            }
            directions.push(v.into_iter().map(|x| Scalar::from_f64(x / norm)).collect());
        }
        Self::validated(dim, directions)
    }

    fn validated(dim: usize, directions: Vec<Vec<Scalar>>) -> Result<Self> {
        for (i, d) in directions.iter().enumerate() {
            if d.iter().all(|c| c.to_f64() == 0.0) {
                return Err(WorkbenchError::Internal("zero direction in grid".into()));
            }
            for e in directions.iter().take(i) {
                if d.iter().zip(e).all(|(a, b)| a.to_f64() == b.to_f64()) {
                    return Err(WorkbenchError::Internal("duplicate direction in grid".into()));
                }
            }
        }
        Ok(DirectionGrid { dim, directions })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Vec<Scalar>] {
        &self.directions
    }
}
