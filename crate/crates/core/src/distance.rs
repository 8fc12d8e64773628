//! Lower-triangular table of pairwise Euclidean distances.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::data::{euclidean, DataSet};
use crate::error::Result;

/// Pairwise distances of a sample stored as a list of rows: row `i`
/// (`1 <= i < n`) holds `d(x_i, x_j)` for `j < i`. The rows are packed into a
/// single buffer, row `i` starting at offset `i * (i - 1) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularDistanceTable {
    n: usize,
    entries: Vec<f64>,
}

#[inline]
fn row_offset(i: usize) -> usize {
    i * (i - 1) / 2
}

impl TriangularDistanceTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance between points `i` and `j`, in either order. The diagonal
    /// is zero.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0.0,
            Greater => self.entries[row_offset(i) + j],
            Less => self.entries[row_offset(j) + i],
        }
    }

    /// Row `i`: distances from point `i` to points `0..i`.
    pub fn row(&self, i: usize) -> &[f64] {
        if i == 0 {
            return &[];
        }
        &self.entries[row_offset(i)..row_offset(i) + i]
    }

    /// Distances from point `i` to every point, `i` itself included.
    pub fn distances_from(&self, i: usize) -> Vec<f64> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }
}

/// Computes `d(x_i, x_j)` for every `j < i`. The result does not depend on
/// how rows are scheduled across threads.
pub fn build_distance_table(data: &DataSet) -> Result<TriangularDistanceTable> {
    let n = data.len();
    let mut entries = vec![0.0; if n > 0 { row_offset(n) } else { 0 }];

    let mut rows: Vec<(usize, &mut [f64])> = Vec::with_capacity(n.saturating_sub(1));
    let mut rest = entries.as_mut_slice();
    for i in 1..n {
        let (row, tail) = rest.split_at_mut(i);
        rows.push((i, row));
        rest = tail;
    }

    let fill = |(i, row): (usize, &mut [f64])| {
        let xi = data.point(i);
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = euclidean(xi, data.point(j));
        }
    };
    #[cfg(feature = "parallel")]
    rows.into_par_iter().for_each(fill);
    #[cfg(not(feature = "parallel"))]
    rows.into_iter().for_each(fill);

    Ok(TriangularDistanceTable { n, entries })
}
