//! Level sets, Tukey median and point depth from a [`BallSystem`].
//!
//! [`BallSystem`]: crate::balls::BallSystem

mod contour;
mod levels;
mod point_depth;

pub use contour::{contour_2d, convex_hull_2d};
pub use levels::{
    ball_size_at, compute_level_sets, tukey_median, tukey_median_detailed, Alpha, LevelSet,
    MedianOptions, MedianResult, MedianRun,
};
pub use point_depth::{
    depth_of_out_of_sample_point, depth_of_sample_point, sample_depths, DepthMode, DepthResult,
};
