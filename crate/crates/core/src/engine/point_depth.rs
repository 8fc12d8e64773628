use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::balls::BallSystem;
use crate::data::DataSet;
use crate::depth::Depth;
use crate::error::{DepthError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DepthMode {
    SamplePoint,
    OutOfSample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthResult {
    pub point: Vec<f64>,
    /// Sample index for [`DepthMode::SamplePoint`].
    pub index: Option<usize>,
    pub depth: Depth,
    /// Size of the first ball family that failed to contain the point;
    /// `None` when every ball contained it.
    pub exit_ball_size: Option<usize>,
    pub mode: DepthMode,
}

/// For `k = 2..=n`, checks whether the point lies in every center's ball of
/// size `n - k + 1` and returns `k - 1` at the first `k` where some ball
/// excludes it. Returns `n` when no ball ever does.
fn depth_loop(system: &BallSystem, center_distances: &[f64]) -> (usize, Option<usize>) {
    let n = system.n_sample();
    for k in 2..=n {
        let m = n - k + 1;
        if !system.in_all_balls(center_distances, m) {
            return (k - 1, Some(m));
        }
    }
    (n, None)
}

/// Approximate depth of sample point `index`.
pub fn depth_of_sample_point(
    data: &DataSet,
    system: &BallSystem,
    index: usize,
) -> Result<DepthResult> {
    let n = data.len();
    if index >= n {
        return Err(DepthError::IndexOutOfRange { index, len: n });
    }
    let dists = system.sample_distances(data, index);
    let (k, exit) = depth_loop(system, &dists);
    Ok(DepthResult {
        point: data.point(index).to_vec(),
        index: Some(index),
        depth: Depth::new(k, n),
        exit_ball_size: exit,
        mode: DepthMode::SamplePoint,
    })
}

/// Approximate depth of an arbitrary point. Ball radii come from the sample
/// alone; `x` adds no distance of its own.
pub fn depth_of_out_of_sample_point(
    data: &DataSet,
    system: &BallSystem,
    x: &[f64],
) -> Result<DepthResult> {
    data.check_dim(x, 0)?;
    let dists = system.point_distances(data, x);
    let (k, exit) = depth_loop(system, &dists);
    Ok(DepthResult {
        point: x.to_vec(),
        index: None,
        depth: Depth::new(k, data.len()),
        exit_ball_size: exit,
        mode: DepthMode::OutOfSample,
    })
}

/// Depth of every sample point, in sample order.
pub fn sample_depths(data: &DataSet, system: &BallSystem) -> Vec<Depth> {
    let n = data.len();
    let one = |i: usize| {
        let (k, _) = depth_loop(system, &system.sample_distances(data, i));
        Depth::new(k, n)
    };
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    (0..n).map(one).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::build_ball_system;
    use crate::distance::build_distance_table;

    fn system_1d(points: &[f64]) -> (DataSet, BallSystem) {
        let data = DataSet::from_flat(points.to_vec(), 1).unwrap();
        let table = build_distance_table(&data).unwrap();
        let sys = build_ball_system::<&[f64]>(&data, table, &[]).unwrap();
        (data, sys)
    }

    #[test]
    fn two_point_sample() {
        let (data, sys) = system_1d(&[0.0, 1.0]);
        let r = depth_of_sample_point(&data, &sys, 0).unwrap();
        assert_eq!(r.depth, Depth::new(1, 2));
        assert_eq!(r.exit_ball_size, Some(1));
    }

    #[test]
    fn middle_of_three() {
        let (data, sys) = system_1d(&[1.0, 2.0, 3.0]);
        assert_eq!(
            depth_of_sample_point(&data, &sys, 1).unwrap().depth,
            Depth::new(2, 3)
        );
        assert_eq!(
            depth_of_sample_point(&data, &sys, 0).unwrap().depth,
            Depth::new(1, 3)
        );
    }

    #[test]
    fn identical_points_have_full_depth() {
        let (data, sys) = system_1d(&[7.0; 4]);
        let r = depth_of_sample_point(&data, &sys, 2).unwrap();
        assert_eq!(r.depth, Depth::new(4, 4));
        assert_eq!(r.exit_ball_size, None);
    }

    #[test]
    fn index_out_of_range() {
        let (data, sys) = system_1d(&[0.0, 1.0]);
        assert!(matches!(
            depth_of_sample_point(&data, &sys, 2),
            Err(DepthError::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn out_of_sample_midpoint() {
        let (data, sys) = system_1d(&[0.0, 2.0]);
        let r = depth_of_out_of_sample_point(&data, &sys, &[1.0]).unwrap();
        assert_eq!(r.depth, Depth::new(1, 2));
        assert_eq!(r.mode, DepthMode::OutOfSample);
        assert!(depth_of_out_of_sample_point(&data, &sys, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn out_of_sample_at_a_sample_point() {
        let (data, sys) = system_1d(&[0.3, -1.0, 2.5, 0.9, 4.0]);
        for i in 0..data.len() {
            let a = depth_of_sample_point(&data, &sys, i).unwrap();
            let b = depth_of_out_of_sample_point(&data, &sys, data.point(i)).unwrap();
            assert_eq!(a.depth, b.depth);
            assert_eq!(a.exit_ball_size, b.exit_ball_size);
        }
    }

    #[test]
    fn far_point_has_depth_one() {
        let data =
            DataSet::new(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.5, 0.4]]).unwrap();
        let table = build_distance_table(&data).unwrap();
        let sys = build_ball_system::<&[f64]>(&data, table, &[]).unwrap();
        let r = depth_of_out_of_sample_point(&data, &sys, &[40.0, -25.0]).unwrap();
        assert_eq!(r.depth, Depth::new(1, 5));
        assert_eq!(r.exit_ball_size, Some(4));
    }
}
