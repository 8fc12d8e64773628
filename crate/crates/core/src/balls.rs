//! Per-center sorted distance rows and closed-ball queries.
//!
//! The ball of size `m` around a center is the closed ball whose radius is
//! the `m`-th smallest distance from that center to the sample points. When
//! the center is itself a sample point its zero self-distance is one of
//! those distances, so the ball always contains its center. Under distance
//! ties a ball may hold more than `m` sample points.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::data::{euclidean, DataSet};
use crate::distance::TriangularDistanceTable;
use crate::error::{DepthError, Result};

/// Centers `0..n` are the sample points; centers `n..` are extra points
/// supplied at construction. Every center has a row of `n` sorted distances
/// to the sample.
#[derive(Debug, Clone)]
pub struct BallSystem {
    n_sample: usize,
    dim: usize,
    table: TriangularDistanceTable,
    extra: Vec<f64>,
    sorted: Vec<f64>,
}

/// Sorts distances ascending with a total order, so equal keys can not
/// reorder between runs.
/// Distances are finite and never negative (`sqrt` of a sum of squares
/// gives `+0.0`, not `-0.0`), and for such values the bit patterns order
/// like the numbers. Integer keys sort faster than float comparisons.
fn sort_row(row: &mut [f64]) {
    row.sort_unstable_by_key(|v| v.to_bits());
}

/// Builds one sorted row per center: first the sample points, then each of
/// `extra_centers` (whose rows hold distances to the `n` sample points only).
pub fn build_ball_system<P: AsRef<[f64]>>(
    data: &DataSet,
    table: TriangularDistanceTable,
    extra_centers: &[P],
) -> Result<BallSystem> {
    let n = data.len();
    if n == 0 {
        return Err(DepthError::EmptyData);
    }
    if table.len() != n {
        return Err(DepthError::InvalidArgument(format!(
            "distance table covers {} points, data set has {n}",
            table.len()
        )));
    }
    let dim = data.dim();
    let mut extra = Vec::with_capacity(extra_centers.len() * dim);
    for (k, c) in extra_centers.iter().enumerate() {
        data.check_dim(c.as_ref(), n + k)?;
        extra.extend_from_slice(c.as_ref());
    }
    let m_total = n + extra_centers.len();
    let mut sorted = vec![0.0; m_total * n];

    let fill = |(j, row): (usize, &mut [f64])| {
        if j < n {
            for (i, slot) in row.iter_mut().enumerate() {
                *slot = table.get(j, i);
            }
        } else {
            let c = &extra[(j - n) * dim..(j - n + 1) * dim];
            for (i, slot) in row.iter_mut().enumerate() {
                *slot = euclidean(c, data.point(i));
            }
        }
        sort_row(row);
    };
    #[cfg(feature = "parallel")]
    sorted.par_chunks_mut(n).enumerate().for_each(fill);
    #[cfg(not(feature = "parallel"))]
    sorted.chunks_mut(n).enumerate().for_each(fill);

    Ok(BallSystem {
        n_sample: n,
        dim,
        table,
        extra,
        sorted,
    })
}

impl BallSystem {
    pub fn n_sample(&self) -> usize {
        self.n_sample
    }

    pub fn num_centers(&self) -> usize {
        self.sorted.len() / self.n_sample
    }

    pub fn num_extra_centers(&self) -> usize {
        self.num_centers() - self.n_sample
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &TriangularDistanceTable {
        &self.table
    }

    /// The sorted distances from `center` to all sample points.
    pub fn sorted_row(&self, center: usize) -> &[f64] {
        &self.sorted[center * self.n_sample..(center + 1) * self.n_sample]
    }

    /// Coordinates of `center`.
    pub fn center_point<'a>(&'a self, data: &'a DataSet, center: usize) -> &'a [f64] {
        if center < self.n_sample {
            data.point(center)
        } else {
            let k = center - self.n_sample;
            &self.extra[k * self.dim..(k + 1) * self.dim]
        }
    }

    /// Radius of the ball of size `m` (the `m`-th smallest distance).
    pub fn ball_radius(&self, center: usize, m: usize) -> Result<f64> {
        if center >= self.num_centers() {
            return Err(DepthError::IndexOutOfRange {
                index: center,
                len: self.num_centers(),
            });
        }
        if m == 0 || m > self.n_sample {
            return Err(DepthError::BallSizeOutOfRange {
                size: m,
                max: self.n_sample,
            });
        }
        Ok(self.radius(center, m))
    }

    #[inline]
    pub(crate) fn radius(&self, center: usize, m: usize) -> f64 {
        self.sorted[center * self.n_sample + m - 1]
    }

    /// Distance from sample point `i` to `center`, read from the table when
    /// both are sample points.
    #[inline]
    pub fn sample_to_center(&self, data: &DataSet, i: usize, center: usize) -> f64 {
        if center < self.n_sample {
            self.table.get(i, center)
        } else {
            euclidean(data.point(i), self.center_point(data, center))
        }
    }

    /// Distances from sample point `i` to every center.
    pub fn sample_distances(&self, data: &DataSet, i: usize) -> Vec<f64> {
        (0..self.num_centers())
            .map(|j| self.sample_to_center(data, i, j))
            .collect()
    }

    /// Distances from an arbitrary point to every center.
    pub fn point_distances(&self, data: &DataSet, x: &[f64]) -> Vec<f64> {
        (0..self.num_centers())
            .map(|j| euclidean(self.center_point(data, j), x))
            .collect()
    }

    /// Smallest ball size `m` such that a point at distance `dist` from
    /// `center` lies in that center's ball of size `m`; `n + 1` when it lies
    /// outside even the largest ball.
    #[inline]
    pub fn entry_size(&self, center: usize, dist: f64) -> usize {
        self.sorted_row(center).partition_point(|&r| r < dist) + 1
    }

    /// Smallest `m` such that a point with the given distances to every
    /// center lies in all balls of size `m`. Balls shrink as `m` decreases,
    /// so the point lies in every ball of size `m` exactly when
    /// `m >= admission_size`.
    pub fn admission_size(&self, center_distances: &[f64]) -> usize {
        debug_assert_eq!(center_distances.len(), self.num_centers());
        let cap = self.n_sample + 1;
        let mut need = 1;
        for (j, &dist) in center_distances.iter().enumerate() {
            need = need.max(self.entry_size(j, dist));
            if need == cap {
                break;
            }
        }
        need
    }

    /// True when a point with these center distances lies in every ball of
    /// size `m`. Stops at the first ball that excludes it.
    #[inline]
    pub fn in_all_balls(&self, center_distances: &[f64], m: usize) -> bool {
        center_distances
            .iter()
            .enumerate()
            .all(|(j, &dist)| dist <= self.radius(j, m))
    }
}

/// Closed-ball membership: `d(center, query) <= radius`.
pub fn ball_contains(center: &[f64], radius: f64, query: &[f64]) -> Result<bool> {
    if center.len() != query.len() {
        return Err(DepthError::DimensionMismatch {
            index: 0,
            expected: center.len(),
            found: query.len(),
        });
    }
    Ok(euclidean(center, query) <= radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::build_distance_table;

    fn system(points: &[f64], extra: &[[f64; 1]]) -> (DataSet, BallSystem) {
        let data = DataSet::from_flat(points.to_vec(), 1).unwrap();
        let table = build_distance_table(&data).unwrap();
        let sys = build_ball_system(&data, table, extra).unwrap();
        (data, sys)
    }

    #[test]
    fn bit_order_sort_matches_numeric_order() {
        let mut row = vec![
            3.5,
            0.0,
            5e-324,
            f64::MAX,
            1.0,
            2.2250738585072014e-308,
            1e-300,
            1.0,
        ];
        let mut expect = row.clone();
        expect.sort_by(f64::total_cmp);
        sort_row(&mut row);
        assert_eq!(row, expect);
    }

    #[test]
    fn sample_center_row() {
        let (_, sys) = system(&[0.0, 1.0, 2.0, 10.0], &[]);
        assert_eq!(sys.sorted_row(0), &[0.0, 1.0, 2.0, 10.0]);
        assert_eq!(sys.ball_radius(0, 3).unwrap(), 2.0);
        assert_eq!(sys.ball_radius(0, 1).unwrap(), 0.0);
        assert_eq!(sys.ball_radius(0, 4).unwrap(), 10.0);
    }

    #[test]
    fn extra_center_row_excludes_itself() {
        let (_, sys) = system(&[0.0, 1.0, 2.0, 10.0], &[[5.0]]);
        assert_eq!(sys.num_centers(), 5);
        assert_eq!(sys.sorted_row(4), &[3.0, 4.0, 5.0, 5.0]);
    }

    #[test]
    fn single_point_row() {
        let (_, sys) = system(&[3.5], &[]);
        assert_eq!(sys.sorted_row(0), &[0.0]);
    }

    #[test]
    fn ball_size_out_of_range() {
        let (_, sys) = system(&[0.0, 1.0], &[]);
        assert!(matches!(
            sys.ball_radius(0, 0),
            Err(DepthError::BallSizeOutOfRange { size: 0, max: 2 })
        ));
        assert!(sys.ball_radius(0, 3).is_err());
        assert!(sys.ball_radius(2, 1).is_err());
    }

    #[test]
    fn extra_center_dimension_checked() {
        let data = DataSet::new(&[[0.0, 0.0], [1.0, 1.0]]).unwrap();
        let table = build_distance_table(&data).unwrap();
        let err = build_ball_system(&data, table, &[vec![1.0]]).unwrap_err();
        assert!(matches!(
            err,
            DepthError::DimensionMismatch { index: 2, .. }
        ));
    }

    #[test]
    fn closed_ball_boundary() {
        assert!(ball_contains(&[0.0, 0.0], 5.0, &[3.0, 4.0]).unwrap());
        assert!(!ball_contains(&[0.0, 0.0], 5.0, &[3.0, 4.0001]).unwrap());
        assert!(ball_contains(&[1.5, -2.0], 0.0, &[1.5, -2.0]).unwrap());
        assert!(ball_contains(&[0.0], 1.0, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn entry_size_matches_radius_comparison() {
        let (data, sys) = system(&[0.0, 1.0, 1.0, 3.0, 7.0], &[[2.0], [-4.0]]);
        for j in 0..sys.num_centers() {
            for q in [-5.0, 0.0, 0.5, 1.0, 2.0, 3.0, 6.0, 9.0, 20.0] {
                let dist = euclidean(sys.center_point(&data, j), &[q]);
                let need = sys.entry_size(j, dist);
                for m in 1..=sys.n_sample() {
                    assert_eq!(
                        m >= need,
                        dist <= sys.radius(j, m),
                        "center {j} q {q} m {m}"
                    );
                }
            }
        }
    }
}
