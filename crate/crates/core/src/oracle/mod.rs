//! Exact and bounding reference depths used to check the approximation.
//!
//! All functions count sample points in closed halfspaces whose boundary
//! passes through the query point; points equal to the query lie in every
//! such halfspace. No general-position assumption is made.

mod directions;
mod enumerate;
mod sweep;

pub use directions::{direction_upper_bound, DirectionSet, Provenance};
pub use enumerate::{exact_depth_smalld, SMALLD_MAX_DIM, SMALLD_MAX_N};
pub use sweep::exact_depth_2d;

use crate::depth::Depth;
use crate::error::{DepthError, Result};

/// `min(#{v <= x}, #{v >= x}) / n`.
pub fn exact_depth_1d(values: &[f64], x: f64) -> Result<Depth> {
    if values.is_empty() {
        return Err(DepthError::EmptyData);
    }
    let below = values.iter().filter(|&&v| v <= x).count();
    let above = values.iter().filter(|&&v| v >= x).count();
    Ok(Depth::new(below.min(above), values.len()))
}
