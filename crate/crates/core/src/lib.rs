//! Approximate halfspace (Tukey) depth computed from intersections of
//! data-centered balls.
//!
//! A depth region of level `k/n` is the intersection of every closed ball
//! that holds at least `n - k + 1` sample points. Restricting that family to
//! balls centered at sample points (and optionally at random artificial
//! points) and probing it with a finite candidate set gives a discrete
//! approximation whose cost is linear in the dimension:
//!
//! * [`engine::compute_level_sets`] / [`engine::tukey_median`]: nested depth
//!   regions and the deepest non-empty one,
//! * [`engine::depth_of_sample_point`] / [`engine::depth_of_out_of_sample_point`]:
//!   the depth of a single point with early exit,
//! * [`oracle`]: exact reference depths for one to three dimensions.

pub mod augment;
pub mod balls;
pub mod bench;
pub mod data;
pub mod depth;
pub mod distance;
pub mod engine;
pub mod error;
pub mod io;
pub mod oracle;
pub mod rng;
pub mod stats;
pub mod synth;

pub use augment::{augment, bounding_domain, AugmentedDataSet, BoundingBox};
pub use balls::{ball_contains, build_ball_system, BallSystem};
pub use data::DataSet;
pub use depth::Depth;
pub use distance::{build_distance_table, TriangularDistanceTable};
pub use engine::{
    compute_level_sets, contour_2d, depth_of_out_of_sample_point, depth_of_sample_point,
    tukey_median, DepthMode, DepthResult, LevelSet, MedianOptions, MedianResult,
};
pub use error::{DepthError, Result};
