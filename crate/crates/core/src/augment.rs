//! Augmented data sets: the sample followed by artificial points drawn
//! uniformly from a box that contains the data.

use serde::{Deserialize, Serialize};

use crate::data::DataSet;
use crate::error::{DepthError, Result};
use crate::rng::Stream;

/// Default relative margin of the candidate box.
pub const DEFAULT_MARGIN: f64 = 0.1;

/// Default relative margin of the box that extra ball centers are drawn
/// from. Centers far from the data give balls that behave like halfspaces.
pub const DEFAULT_CENTER_MARGIN: f64 = 10.0;

/// Half width used on an axis where all points share one coordinate,
/// relative to `max(1, |coordinate|)`.
pub const DEGENERATE_HALF_WIDTH: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub margin: f64,
}

impl BoundingBox {
    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(self.min.iter().zip(&self.max))
                .all(|(&x, (&lo, &hi))| lo <= x && x <= hi)
    }
}

/// Per axis `[min - margin * range, max + margin * range]`; an axis with zero
/// range is widened by [`DEGENERATE_HALF_WIDTH`] on each side.
pub fn bounding_domain(data: &DataSet, margin: f64) -> Result<BoundingBox> {
    if !(margin >= 0.0 && margin.is_finite()) {
        return Err(DepthError::InvalidArgument(format!(
            "margin must be a finite non-negative number, got {margin}"
        )));
    }
    let d = data.dim();
    let mut lo = data.point(0).to_vec();
    let mut hi = lo.clone();
    for p in data.points() {
        for k in 0..d {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    for k in 0..d {
        let range = hi[k] - lo[k];
        if range > 0.0 {
            lo[k] -= margin * range;
            hi[k] += margin * range;
        } else {
            let half = DEGENERATE_HALF_WIDTH * lo[k].abs().max(1.0);
            lo[k] -= half;
            hi[k] += half;
        }
    }
    Ok(BoundingBox {
        min: lo,
        max: hi,
        margin,
    })
}

/// The sample (first `n` candidates) followed by the artificial points.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedDataSet {
    pub sample: DataSet,
    artificial: Vec<f64>,
    pub seed: u64,
    pub domain: BoundingBox,
}

impl AugmentedDataSet {
    /// An augmented set with no artificial points.
    pub fn plain(sample: DataSet) -> Result<Self> {
        let domain = bounding_domain(&sample, DEFAULT_MARGIN)?;
        Ok(Self {
            sample,
            artificial: Vec::new(),
            seed: 0,
            domain,
        })
    }

    pub fn n_sample(&self) -> usize {
        self.sample.len()
    }

    pub fn n_artificial(&self) -> usize {
        self.artificial.len() / self.sample.dim()
    }

    /// Total size `N`.
    pub fn len(&self) -> usize {
        self.n_sample() + self.n_artificial()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.sample.dim()
    }

    /// Candidate `i`: a sample point for `i < n`, an artificial point after.
    pub fn point(&self, i: usize) -> &[f64] {
        let n = self.n_sample();
        if i < n {
            self.sample.point(i)
        } else {
            let d = self.dim();
            &self.artificial[(i - n) * d..(i - n + 1) * d]
        }
    }

    pub fn is_artificial(&self, i: usize) -> bool {
        i >= self.n_sample()
    }

    pub fn artificial_points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.artificial.chunks_exact(self.dim())
    }

    pub fn artificial_flat(&self) -> &[f64] {
        &self.artificial
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.sample.points().chain(self.artificial_points())
    }
}

/// Draws `count` points uniformly from `domain` with the stream for `seed`,
/// coordinates in point-major order. A smaller `count` with the same seed
/// yields a prefix of a larger one.
pub fn augment(
    data: &DataSet,
    count: usize,
    seed: u64,
    domain: &BoundingBox,
) -> Result<AugmentedDataSet> {
    if domain.dim() != data.dim() {
        return Err(DepthError::DimensionMismatch {
            index: 0,
            expected: data.dim(),
            found: domain.dim(),
        });
    }
    let artificial = uniform_points(&mut Stream::new(seed), count, domain);
    Ok(AugmentedDataSet {
        sample: data.clone(),
        artificial,
        seed,
        domain: domain.clone(),
    })
}

/// Extra ball centers drawn uniformly from the data box widened by
/// `margin`, using a stream independent of the one used by [`augment`]
/// for the same seed. Row-major, `count * d` coordinates.
pub fn distant_centers(data: &DataSet, count: usize, seed: u64, margin: f64) -> Result<Vec<f64>> {
    let domain = bounding_domain(data, margin)?;
    Ok(uniform_points(&mut Stream::jumped(seed), count, &domain))
}

fn uniform_points(stream: &mut Stream, count: usize, domain: &BoundingBox) -> Vec<f64> {
    let d = domain.dim();
    let mut out = Vec::with_capacity(count * d);
    for _ in 0..count {
        for k in 0..d {
            out.push(stream.uniform_in(domain.min[k], domain.max[k]));
        }
    }
    out
}
