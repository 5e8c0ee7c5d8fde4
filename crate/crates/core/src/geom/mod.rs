//! Metric geometry on the unit cube and torus.
//!
//! Points live in `[0,1]^d`. Distances are Euclidean, either plain (cube) or
//! with per-axis wrap-around (torus). Positions are stored flattened in a
//! [`PointSet`] so large instances stay cache-friendly.

mod tess;
mod volume;

pub use tess::{grid_spanning_path, tessellate, SideRule, Tessellation};
pub use volume::{
    ball_intersection_volume, ball_volume, circle_rect_area, clipped_ball_volume, lens_area,
    region_volume, Region,
};

use crate::{Error, Result};

/// Distance convention on `[0,1]^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Plain Euclidean distance on the cube.
    CubeEuclidean,
    /// Euclidean distance on `R^d/Z^d`: per axis `min(|a-b|, 1-|a-b|)`.
    TorusEuclidean,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::CubeEuclidean => "cube",
            Metric::TorusEuclidean => "torus",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(Metric::CubeEuclidean),
            "torus" => Ok(Metric::TorusEuclidean),
            other => Err(Error::Parameter(format!("unknown metric `{other}`"))),
        }
    }
}

/// A single position in `[0,1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// `n` positions in `[0,1]^d`, flattened row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("dimension must be >= 1".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::Parameter(format!(
                "coordinate count {} not a multiple of dim {dim}",
                coords.len()
            )));
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_points(dim: usize, pts: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(pts.len() * dim);
        for p in pts {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(p.len(), dim));
            }
            coords.extend_from_slice(p);
        }
        PointSet::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates of point `i` as a slice of length `dim`.
    #[inline]
    pub fn coords(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }
}

/// Squared distance between coordinate slices under `metric`.
#[inline]
pub fn distance_sq(p: &[f64], q: &[f64], metric: Metric) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    let mut acc = 0.0;
    match metric {
        Metric::CubeEuclidean => {
            for (a, b) in p.iter().zip(q) {
                let d = a - b;
                acc += d * d;
            }
        }
        Metric::TorusEuclidean => {
            for (a, b) in p.iter().zip(q) {
                let d = (a - b).abs();
                let d = d.min(1.0 - d);
                acc += d * d;
            }
        }
    }
    acc
}

/// Euclidean distance between two points under `metric`.
///
/// Errors when the points have different dimensions.
pub fn distance(p: &Point, q: &Point, metric: Metric) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    Ok(distance_sq(&p.0, &q.0, metric).sqrt())
}

/// Distance from a point to the boundary of the unit cube (0 on the torus,
/// where there is no boundary).
pub fn boundary_distance(p: &[f64], metric: Metric) -> f64 {
    match metric {
        Metric::TorusEuclidean => f64::INFINITY,
        Metric::CubeEuclidean => p
            .iter()
            .map(|&x| x.min(1.0 - x))
            .fold(f64::INFINITY, f64::min),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distance_examples() {
        let p = Point(vec![0.1]);
        let q = Point(vec![0.9]);
        assert!((distance(&p, &q, Metric::CubeEuclidean).unwrap() - 0.8).abs() < 1e-12);
        assert!((distance(&p, &q, Metric::TorusEuclidean).unwrap() - 0.2).abs() < 1e-12);
        let p = Point(vec![0.0, 0.0]);
        let q = Point(vec![0.3, 0.4]);
        assert!((distance(&p, &q, Metric::CubeEuclidean).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let p = Point(vec![0.1]);
        let q = Point(vec![0.1, 0.2]);
        assert!(distance(&p, &q, Metric::CubeEuclidean).is_err());
    }

    #[test]
    fn metric_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for metric in [Metric::CubeEuclidean, Metric::TorusEuclidean] {
            for _ in 0..500 {
                let d = rng.gen_range(1..=4);
                let rand_pt =
                    |rng: &mut ChaCha8Rng| Point((0..d).map(|_| rng.gen::<f64>()).collect());
                let (a, b, c) = (rand_pt(&mut rng), rand_pt(&mut rng), rand_pt(&mut rng));
                let ab = distance(&a, &b, metric).unwrap();
                let ba = distance(&b, &a, metric).unwrap();
                let ac = distance(&a, &c, metric).unwrap();
                let cb = distance(&c, &b, metric).unwrap();
                assert!(ab >= 0.0);
                assert_eq!(ab, ba);
                assert!(ab <= ac + cb + 1e-12, "triangle inequality violated");
            }
        }
    }

    #[test]
    fn torus_never_exceeds_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let d = rng.gen_range(1..=4);
            let a = Point((0..d).map(|_| rng.gen::<f64>()).collect());
            let b = Point((0..d).map(|_| rng.gen::<f64>()).collect());
            let cube = distance(&a, &b, Metric::CubeEuclidean).unwrap();
            let torus = distance(&a, &b, Metric::TorusEuclidean).unwrap();
            assert!(torus <= cube + 1e-12);
        }
    }
}
