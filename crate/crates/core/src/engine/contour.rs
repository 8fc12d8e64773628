use robust::{orient2d, Coord};

use crate::augment::AugmentedDataSet;
use crate::engine::LevelSet;
use crate::error::{DepthError, Result};

/// Convex hull of a level set's members, counter-clockwise from the
/// lexicographically smallest vertex. Collinear boundary points are
/// dropped; a single point or a segment is returned as 1 or 2 vertices.
pub fn contour_2d(level: &LevelSet, candidates: &AugmentedDataSet) -> Result<Vec<[f64; 2]>> {
    if candidates.dim() != 2 {
        return Err(DepthError::UnsupportedDimension {
            supported: "2",
            found: candidates.dim(),
        });
    }
    if level.members.is_empty() {
        return Err(DepthError::InvalidArgument(
            "level set has no members".into(),
        ));
    }
    let pts: Vec<[f64; 2]> = level
        .members
        .iter()
        .map(|&i| {
            let p = candidates.point(i);
            [p[0], p[1]]
        })
        .collect();
    Ok(convex_hull_2d(&pts))
}

#[inline]
fn turn(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    orient2d(
        Coord { x: a[0], y: a[1] },
        Coord { x: b[0], y: b[1] },
        Coord { x: c[0], y: c[1] },
    )
}

/// Andrew's monotone chain with exact orientation tests.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DataSet;
    use crate::depth::Depth;

    #[test]
    fn square_with_center() {
        let h = convex_hull_2d(&[[1.0, 1.0], [0.5, 0.5], [0.0, 1.0], [0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(h, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    }

    #[test]
    fn single_point_and_duplicates() {
        assert_eq!(convex_hull_2d(&[[2.0, 3.0]]), vec![[2.0, 3.0]]);
        assert_eq!(convex_hull_2d(&[[2.0, 3.0], [2.0, 3.0]]), vec![[2.0, 3.0]]);
    }

    #[test]
    fn collinear_points_give_endpoints() {
        let h = convex_hull_2d(&[[1.0, 1.0], [0.0, 0.0], [2.0, 2.0]]);
        assert_eq!(h, vec![[0.0, 0.0], [2.0, 2.0]]);
    }

    #[test]
    fn collinear_boundary_points_dropped() {
        let h = convex_hull_2d(&[
            [0.0, 0.0],
            [1.0, 0.0],
            [2.0, 0.0],
            [2.0, 2.0],
            [0.0, 2.0],
            [0.0, 1.0],
        ]);
        assert_eq!(h, vec![[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]);
    }

    #[test]
    fn rejects_other_dimensions() {
        let cand = AugmentedDataSet::plain(DataSet::new(&[[0.0], [1.0]]).unwrap()).unwrap();
        let level = LevelSet {
            depth: Depth::new(1, 2),
            ball_size: 2,
            members: vec![0, 1],
        };
        assert!(matches!(
            contour_2d(&level, &cand),
            Err(DepthError::UnsupportedDimension { found: 1, .. })
        ));
    }
}
