//! The sample: an ordered, index-addressable collection of points.

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};

/// `n` points of common dimension `d`, stored row-major. Repetitions are
/// allowed and the order is stable; point `i` is addressed by its 0-based
/// position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSet {
    coords: Vec<f64>,
    dim: usize,
}

impl DataSet {
    pub fn new<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let first = points.first().ok_or(DepthError::EmptyData)?;
        let dim = first.as_ref().len();
        if dim == 0 {
            return Err(DepthError::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (index, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(DepthError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(DepthError::NonFinite { index });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self { coords, dim })
    }

    /// Builds a data set from row-major coordinates.
    pub fn from_flat(coords: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(DepthError::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(DepthError::EmptyData);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(DepthError::DimensionMismatch {
                index: coords.len() / dim,
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(DepthError::NonFinite { index: pos / dim });
        }
        Ok(Self { coords, dim })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn get(&self, i: usize) -> Option<&[f64]> {
        (i < self.len()).then(|| self.point(i))
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }

    /// Checks that `p` has this data set's dimension. `index` is reported in
    /// the error.
    pub fn check_dim(&self, p: &[f64], index: usize) -> Result<()> {
        if p.len() != self.dim {
            return Err(DepthError::DimensionMismatch {
                index,
                expected: self.dim,
                found: p.len(),
            });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(DepthError::NonFinite { index });
        }
        Ok(())
    }

    /// True when every point coincides with the first one.
    pub fn all_identical(&self) -> bool {
        let first = self.point(0);
        self.points().all(|p| p == first)
    }
}

/// Euclidean distance. The sum runs over coordinates in index order and
/// `(a - b)^2 == (b - a)^2` bit for bit, so `euclidean(a, b) == euclidean(b, a)`.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = x - y;
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_points() {
        let err = DataSet::new(&[vec![0.0, 1.0], vec![2.0]]).unwrap_err();
        assert!(matches!(
            err,
            DepthError::DimensionMismatch {
                index: 1,
                expected: 2,
                found: 1
            }
        ));
    }

    #[test]
    fn rejects_empty_and_zero_dim() {
        let empty: [Vec<f64>; 0] = [];
        assert!(matches!(DataSet::new(&empty), Err(DepthError::EmptyData)));
        assert!(matches!(
            DataSet::new(&[Vec::<f64>::new()]),
            Err(DepthError::ZeroDimension)
        ));
    }

    #[test]
    fn keeps_order_and_repetitions() {
        let ds = DataSet::new(&[[1.0, 1.0], [0.0, 2.0], [1.0, 1.0]]).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.point(1), &[0.0, 2.0]);
        assert_eq!(ds.point(0), ds.point(2));
        assert!(!ds.all_identical());
    }

    #[test]
    fn distance_is_symmetric() {
        let a = [0.1, -3.7, 2.2];
        let b = [5.5, 0.3, -1.9];
        assert_eq!(euclidean(&a, &b).to_bits(), euclidean(&b, &a).to_bits());
        assert_eq!(euclidean(&[0.0, 0.0], &[3.0, 4.0]), 5.0);
    }
}
