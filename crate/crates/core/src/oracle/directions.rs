use serde::{Deserialize, Serialize};

use crate::data::DataSet;
use crate::depth::Depth;
use crate::error::{DepthError, Result};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SampledUniform,
    Pairwise,
    Axes,
    Given,
}

/// A finite set of unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    dim: usize,
    vectors: Vec<f64>,
    pub provenance: Provenance,
}

impl DirectionSet {
    /// Normalizes the given non-zero vectors.
    pub fn new<P: AsRef<[f64]>>(vectors: &[P]) -> Result<Self> {
        let dim = vectors.first().ok_or(DepthError::EmptyData)?.as_ref().len();
        let mut flat = Vec::with_capacity(vectors.len() * dim);
        for (index, v) in vectors.iter().enumerate() {
            let v = v.as_ref();
            if v.len() != dim {
                return Err(DepthError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
            let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if !(len > 0.0 && len.is_finite()) {
                return Err(DepthError::InvalidArgument(format!(
                    "direction {index} has no usable length"
                )));
            }
            flat.extend(v.iter().map(|c| c / len));
        }
        Ok(Self {
            dim,
            vectors: flat,
            provenance: Provenance::Given,
        })
    }

    /// `count` directions uniform on the unit sphere (normalized Gaussian
    /// vectors).
    pub fn sampled_uniform(dim: usize, count: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(DepthError::ZeroDimension);
        }
        let mut stream = Stream::new(seed);
        let mut vs = Vec::with_capacity(count);
        while vs.len() < count {
            let v: Vec<f64> = (0..dim).map(|_| stream.standard_normal()).collect();
            if v.iter().any(|&c| c != 0.0) {
                vs.push(v);
            }
        }
        let mut set = Self::new(&vs)?;
        set.provenance = Provenance::SampledUniform;
        Ok(set)
    }

    /// The `2d` signed coordinate axes.
    pub fn axes(dim: usize) -> Result<Self> {
        let mut vs = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; dim];
                v[k] = s;
                vs.push(v);
            }
        }
        let mut set = Self::new(&vs)?;
        set.provenance = Provenance::Axes;
        Ok(set)
    }

    /// For bivariate data: one direction inside every arc between
    /// consecutive normals of the differences `x_i - x`, so each
    /// combinatorially distinct halfplane through `x` is represented.
    pub fn pairwise(points: &DataSet, x: &[f64]) -> Result<Self> {
        if points.dim() != 2 {
            return Err(DepthError::UnsupportedDimension {
                supported: "2",
                found: points.dim(),
            });
        }
        points.check_dim(x, 0)?;
        use std::f64::consts::{FRAC_PI_2, TAU};
        let mut angles: Vec<f64> = points
            .points()
            .filter(|p| *p != x)
            .flat_map(|p| {
                let a = (p[1] - x[1]).atan2(p[0] - x[0]);
                [
                    (a + FRAC_PI_2).rem_euclid(TAU),
                    (a - FRAC_PI_2).rem_euclid(TAU),
                ]
            })
            .collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup();
        let mids: Vec<f64> = match angles.len() {
            0 => vec![0.0],
            1 => vec![angles[0] + std::f64::consts::PI],
            k => (0..k)
                .map(|i| {
                    let a = angles[i];
                    let b = if i + 1 < k {
                        angles[i + 1]
                    } else {
                        angles[0] + TAU
                    };
                    0.5 * (a + b)
                })
                .collect(),
        };
        let vs: Vec<[f64; 2]> = mids.iter().map(|t| [t.cos(), t.sin()]).collect();
        let mut set = Self::new(&vs)?;
        set.provenance = Provenance::Pairwise;
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.vectors.chunks_exact(self.dim)
    }
}

/// `min_u #{<u, x_i> <= <u, x>} / n` over the given directions. Since the
/// exact depth minimizes over all directions this is never below it.
pub fn direction_upper_bound(
    points: &DataSet,
    x: &[f64],
    directions: &DirectionSet,
) -> Result<Depth> {
    points.check_dim(x, 0)?;
    if directions.is_empty() {
        return Err(DepthError::InvalidArgument("direction set is empty".into()));
    }
    if directions.dim() != points.dim() {
        return Err(DepthError::DimensionMismatch {
            index: 0,
            expected: points.dim(),
            found: directions.dim(),
        });
    }
    let proj = |u: &[f64], p: &[f64]| u.iter().zip(p).map(|(a, b)| a * b).sum::<f64>();
    let best = directions
        .iter()
        .map(|u| {
            let ux = proj(u, x);
            points.points().filter(|p| proj(u, p) <= ux).count()
        })
        .min()
        .unwrap_or(points.len());
    Ok(Depth::new(best, points.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::exact_depth_2d;

    #[test]
    fn unit_norms() {
        let set = DirectionSet::sampled_uniform(3, 500, 11).unwrap();
        assert_eq!(set.len(), 500);
        for u in set.iter() {
            let len = u.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((len - 1.0).abs() < 1e-12);
        }
        assert!(DirectionSet::new(&[[0.0, 0.0]]).is_err());
    }

    #[test]
    fn axes_give_coordinatewise_bound() {
        let pts = DataSet::new(&[[0.0, 0.0], [1.0, 3.0], [2.0, 1.0], [3.0, 2.0]]).unwrap();
        let axes = DirectionSet::axes(2).unwrap();
        // x-ranks of 1.0 among {0,1,2,3}: 2 below-or-equal, 3 above-or-equal.
        let b = direction_upper_bound(&pts, &[1.0, 3.0], &axes).unwrap();
        assert_eq!(b, Depth::new(1, 4));
        let b = direction_upper_bound(&pts, &[2.0, 1.0], &axes).unwrap();
        assert_eq!(b, Depth::new(2, 4));
    }

    #[test]
    fn extreme_point_counts_itself() {
        let pts = DataSet::new(&[[0.0], [1.0], [5.0]]).unwrap();
        let u = DirectionSet::new(&[[-1.0]]).unwrap();
        assert_eq!(
            direction_upper_bound(&pts, &[5.0], &u).unwrap(),
            Depth::new(1, 3)
        );
    }

    #[test]
    fn pairwise_directions_are_exact() {
        let pts = DataSet::new(&[
            [0.1, 0.3],
            [1.7, -0.4],
            [-0.8, 0.9],
            [0.6, 1.2],
            [-1.1, -0.7],
            [0.2, -1.5],
        ])
        .unwrap();
        for x in [[0.0, 0.0], [0.6, 1.2], [3.0, 3.0], [0.2, 0.1]] {
            let dirs = DirectionSet::pairwise(&pts, &x).unwrap();
            assert_eq!(
                direction_upper_bound(&pts, &x, &dirs).unwrap(),
                exact_depth_2d(&pts, &x).unwrap()
            );
        }
    }
}
