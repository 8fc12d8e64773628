use std::cmp::Ordering;

use robust::{orient2d, Coord};

use crate::data::DataSet;
use crate::depth::Depth;
use crate::error::{DepthError, Result};

#[inline]
fn coord(p: &[f64]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

/// Sign of the turn `x -> a -> b`, exact.
#[inline]
fn turn(x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    orient2d(coord(x), coord(a), coord(b))
}

/// 0 for directions in `[0, pi)`, 1 for `[pi, 2 pi)`, measured around `x`.
#[inline]
fn half(x: &[f64], p: &[f64]) -> u8 {
    if p[1] > x[1] || (p[1] == x[1] && p[0] > x[0]) {
        0
    } else {
        1
    }
}

/// Exact bivariate halfspace depth by an angular sweep around `x`.
///
/// Depth is `n` minus the largest number of points in an open halfplane
/// bounded by a line through `x`; such a halfplane corresponds to an open
/// half-circle of directions. Points are sorted by direction with exact
/// orientation tests, equal directions are merged, and a two-pointer window
/// finds the fullest half-open arc `[theta, theta + pi)` starting at a
/// point direction, which has the same maximum.
pub fn exact_depth_2d(points: &DataSet, x: &[f64]) -> Result<Depth> {
    if points.dim() != 2 {
        return Err(DepthError::UnsupportedDimension {
            supported: "2",
            found: points.dim(),
        });
    }
    points.check_dim(x, 0)?;
    let n = points.len();

    let mut dirs: Vec<&[f64]> = points.points().filter(|p| *p != x).collect();
    dirs.sort_by(|a, b| {
        half(x, a).cmp(&half(x, b)).then_with(|| {
            let t = turn(x, a, b);
            if t > 0.0 {
                Ordering::Less
            } else if t < 0.0 {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });

    // Merge equal directions.
    let mut groups: Vec<(&[f64], usize)> = Vec::new();
    for p in dirs {
        match groups.last_mut() {
            Some((q, c)) if half(x, q) == half(x, p) && turn(x, q, p) == 0.0 => *c += 1,
            _ => groups.push((p, 1)),
        }
    }

    let g = groups.len();
    let mut best = 0;
    let mut end = 0;
    let mut window = 0;
    for start in 0..g {
        if end <= start {
            end = start + 1;
            window = groups[start].1;
        }
        while end < start + g && turn(x, groups[start].0, groups[end % g].0) > 0.0 {
            window += groups[end % g].1;
            end += 1;
        }
        best = best.max(window);
        window -= groups[start].1;
    }
    Ok(Depth::new(n - best, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn depth(points: &[[f64; 2]], x: [f64; 2]) -> Depth {
        exact_depth_2d(&DataSet::new(points).unwrap(), &x).unwrap()
    }

    #[test]
    fn square_center() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(depth(&sq, [0.5, 0.5]), Depth::new(2, 4));
        assert_eq!(depth(&sq, [0.0, 0.0]), Depth::new(1, 4));
        // Tilting the edge line through its midpoint leaves one corner.
        assert_eq!(depth(&sq, [0.5, 0.0]), Depth::new(1, 4));
    }

    #[test]
    fn triangle_vertex_and_interior() {
        let tri = [[0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]];
        assert_eq!(depth(&tri, [0.0, 1.0]), Depth::new(1, 3));
        assert_eq!(depth(&tri, [0.0, 0.3]), Depth::new(1, 3));
        assert_eq!(depth(&tri, [0.0, 0.0]), Depth::new(1, 3));
    }

    #[test]
    fn outside_hull() {
        let tri = [[0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]];
        assert_eq!(depth(&tri, [5.0, 5.0]), Depth::new(0, 3));
        assert_eq!(depth(&tri, [0.0, -1e-300]), Depth::new(0, 3));
    }

    #[test]
    fn coincident_points_always_count() {
        let pts = [[0.0, 0.0], [0.0, 0.0], [3.0, 0.0]];
        assert_eq!(depth(&pts, [0.0, 0.0]), Depth::new(2, 3));
        assert_eq!(depth(&[[1.0, 1.0]], [1.0, 1.0]), Depth::new(1, 1));
    }

    #[test]
    fn collinear_through_query() {
        // Opposite rays: the halfplane boundary through both keeps them.
        let pts = [[-1.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        assert_eq!(depth(&pts, [0.0, 0.0]), Depth::new(1, 3));
        assert_eq!(depth(&pts, [1.0, 0.0]), Depth::new(2, 3));
    }

    #[test]
    fn rejects_other_dimensions() {
        let data = DataSet::new(&[[0.0, 0.0, 0.0]]).unwrap();
        assert!(exact_depth_2d(&data, &[0.0, 0.0, 0.0]).is_err());
    }
}
