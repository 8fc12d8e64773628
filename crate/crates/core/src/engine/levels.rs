use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::augment::{
    augment, bounding_domain, distant_centers, AugmentedDataSet, DEFAULT_CENTER_MARGIN,
    DEFAULT_MARGIN,
};
use crate::balls::{build_ball_system, BallSystem};
use crate::data::{euclidean, DataSet};
use crate::depth::Depth;
use crate::distance::build_distance_table;
use crate::error::{DepthError, Result};

/// An exact rational level `numerator / denominator` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alpha {
    pub numerator: u64,
    pub denominator: u64,
}

impl Alpha {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator == 0 || numerator > denominator {
            return Err(DepthError::InvalidStartLevel {
                numerator,
                denominator,
            });
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// `1 / (d + 1)`, a lower bound on the maximal depth in dimension `d`.
    pub fn for_dimension(d: usize) -> Self {
        Self {
            numerator: 1,
            denominator: d as u64 + 1,
        }
    }
}

/// Ball size `floor(n (1 - alpha_k) + 1)` at step `k` (1-based), where
/// `alpha_k = start + (k - 1) / n`, computed in integer arithmetic.
pub fn ball_size_at(n: usize, start: Alpha, k: usize) -> i64 {
    let (n, a, b, k) = (
        n as i128,
        start.numerator as i128,
        start.denominator as i128,
        k as i128,
    );
    // n (1 - alpha_k) + 1 = (n (b - a) - (k - 2) b) / b
    let num = n * (b - a) - (k - 2) * b;
    num.div_euclid(b) as i64
}

/// Candidates lying in every center's ball of size `ball_size`. Its depth
/// label is `(n - ball_size + 1) / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSet {
    pub depth: Depth,
    pub ball_size: usize,
    /// Candidate indices in increasing order; indices below `n` are sample
    /// points.
    pub members: Vec<usize>,
}

impl LevelSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn level(n: usize, ball_size: usize, members: Vec<usize>) -> LevelSet {
    LevelSet {
        depth: Depth::new(n - ball_size + 1, n),
        ball_size,
        members,
    }
}

/// Admission size of every candidate: the smallest ball size whose balls
/// all contain it (see [`BallSystem::admission_size`]).
///
/// Runs center by center so each sorted row stays in cache while every
/// candidate is searched in it; candidate-major order thrashes once the
/// rows outgrow the cache.
pub(crate) fn admission_sizes(
    data: &DataSet,
    system: &BallSystem,
    candidates: &AugmentedDataSet,
) -> Vec<usize> {
    let n = data.len();
    let len = candidates.len();
    let visit = |mut need: Vec<usize>, j: usize| {
        let center = system.center_point(data, j);
        for (c, slot) in need.iter_mut().enumerate() {
            let dist = if c < n {
                system.sample_to_center(data, c, j)
            } else {
                euclidean(center, candidates.point(c))
            };
            *slot = (*slot).max(system.entry_size(j, dist));
        }
        need
    };
    #[cfg(feature = "parallel")]
    return (0..system.num_centers())
        .into_par_iter()
        .fold(|| vec![1; len], visit)
        .reduce(
            || vec![1; len],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x = (*x).max(y));
                a
            },
        );
    #[cfg(not(feature = "parallel"))]
    (0..system.num_centers()).fold(vec![1; len], visit)
}

/// Iterates `alpha_{k+1} = alpha_k + 1/n` from `start` (default `1/(d+1)`),
/// keeping at each step the candidates that lie in every ball of size
/// `floor(n (1 - alpha_k) + 1)`. Stops after the first level with at most
/// one member, or before the first empty one. When already the first level
/// is empty, the result is the single smallest non-empty level above it.
/// Levels are returned in increasing depth and are nested.
///
/// Balls only shrink as `alpha` grows, so each level is filtered from the
/// previous one; membership at every step is the same as intersecting all
/// balls from scratch.
pub fn compute_level_sets(
    data: &DataSet,
    system: &BallSystem,
    candidates: &AugmentedDataSet,
    start: Option<Alpha>,
) -> Result<Vec<LevelSet>> {
    Ok(run_levels(data, system, candidates, start)?.0)
}

fn run_levels(
    data: &DataSet,
    system: &BallSystem,
    candidates: &AugmentedDataSet,
    start: Option<Alpha>,
) -> Result<(Vec<LevelSet>, usize)> {
    let n = data.len();
    if system.n_sample() != n || candidates.n_sample() != n {
        return Err(DepthError::InvalidArgument(
            "ball system, candidates and data set disagree on the sample size".into(),
        ));
    }
    if candidates.dim() != data.dim() {
        return Err(DepthError::DimensionMismatch {
            index: 0,
            expected: data.dim(),
            found: candidates.dim(),
        });
    }
    let start = start.unwrap_or_else(|| Alpha::for_dimension(data.dim()));
    Alpha::new(start.numerator, start.denominator)?;

    let need = admission_sizes(data, system, candidates);

    if n > 1 && data.all_identical() {
        // Every ball has radius zero: one region of depth n/n.
        let members = (0..need.len()).filter(|&i| need[i] <= 1).collect();
        return Ok((vec![level(n, 1, members)], 1));
    }

    let mut levels = Vec::new();
    let mut members: Vec<usize> = (0..need.len()).collect();
    let mut iterations = 0;
    for k in 1.. {
        let m = ball_size_at(n, start, k);
        if m < 1 {
            break;
        }
        let m = m as usize;
        iterations += 1;
        members.retain(|&i| need[i] <= m);
        if members.is_empty() {
            if k == 1 {
                // The finite candidate set can miss a thin starting region.
                // Back off to the smallest non-empty ball size; every sample
                // point lies in all balls of size n, so one exists.
                let m = need.iter().copied().min().unwrap_or(n).min(n);
                let members = (0..need.len()).filter(|&i| need[i] <= m).collect();
                levels.push(level(n, m, members));
            }
            break;
        }
        let done = members.len() <= 1;
        levels.push(level(n, m, members.clone()));
        if done {
            break;
        }
    }
    Ok((levels, iterations))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianOptions {
    /// Artificial candidates drawn from the data box; they are also ball
    /// centers.
    pub artificial_count: usize,
    pub seed: u64,
    /// Relative margin of the candidate box.
    pub margin: f64,
    /// Extra ball centers drawn from a wider box. `None` uses
    /// `artificial_count`.
    pub distant_centers: Option<usize>,
    pub center_margin: f64,
    pub start: Option<Alpha>,
}

impl Default for MedianOptions {
    fn default() -> Self {
        Self {
            artificial_count: 0,
            seed: 0,
            margin: DEFAULT_MARGIN,
            distant_centers: None,
            center_margin: DEFAULT_CENTER_MARGIN,
            start: None,
        }
    }
}

impl MedianOptions {
    pub fn with_artificial(count: usize, seed: u64) -> Self {
        Self {
            artificial_count: count,
            seed,
            ..Self::default()
        }
    }

    pub fn distant_count(&self) -> usize {
        self.distant_centers.unwrap_or(self.artificial_count)
    }

    /// Candidate set and ball system for `data` under these options.
    pub fn prepare(&self, data: &DataSet) -> Result<(AugmentedDataSet, BallSystem)> {
        let domain = bounding_domain(data, self.margin)?;
        let candidates = augment(data, self.artificial_count, self.seed, &domain)?;
        let distant = distant_centers(data, self.distant_count(), self.seed, self.center_margin)?;
        let mut extra = candidates.artificial_flat().to_vec();
        extra.extend_from_slice(&distant);
        let extra: Vec<&[f64]> = extra.chunks_exact(data.dim()).collect();
        let table = build_distance_table(data)?;
        let system = build_ball_system(data, table, &extra)?;
        Ok((candidates, system))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianResult {
    pub depth: Depth,
    pub ball_size: usize,
    /// Candidate indices of the deepest non-empty level.
    pub median: Vec<usize>,
    pub median_points: Vec<Vec<f64>>,
    pub levels: Vec<LevelSet>,
    /// Passes through the intersection loop, the final empty one included.
    pub iterations: usize,
    pub n_sample: usize,
    pub n_candidates: usize,
    pub n_centers: usize,
}

impl MedianResult {
    /// Mean of the median points.
    pub fn centroid(&self) -> Vec<f64> {
        let d = self.median_points[0].len();
        let mut c = vec![0.0; d];
        for p in &self.median_points {
            for (ck, pk) in c.iter_mut().zip(p) {
                *ck += pk;
            }
        }
        let k = self.median_points.len() as f64;
        c.iter_mut().for_each(|x| *x /= k);
        c
    }
}

/// Everything produced by one median computation.
#[derive(Debug, Clone)]
pub struct MedianRun {
    pub result: MedianResult,
    pub candidates: AugmentedDataSet,
    pub system: BallSystem,
}

/// Augments (when requested), builds the ball system and returns the
/// deepest non-empty level set.
pub fn tukey_median(data: &DataSet, options: &MedianOptions) -> Result<MedianResult> {
    Ok(tukey_median_detailed(data, options)?.result)
}

pub fn tukey_median_detailed(data: &DataSet, options: &MedianOptions) -> Result<MedianRun> {
    if data.is_empty() {
        return Err(DepthError::EmptyData);
    }
    let (candidates, system) = options.prepare(data)?;
    let (levels, iterations) = run_levels(data, &system, &candidates, options.start)?;
    let last = levels.last().ok_or_else(|| {
        DepthError::InvalidArgument("start level lies above every non-empty level".into())
    })?;
    let result = MedianResult {
        depth: last.depth,
        ball_size: last.ball_size,
        median: last.members.clone(),
        median_points: last
            .members
            .iter()
            .map(|&i| candidates.point(i).to_vec())
            .collect(),
        iterations,
        n_sample: data.len(),
        n_candidates: candidates.len(),
        n_centers: system.num_centers(),
        levels,
    };
    Ok(MedianRun {
        result,
        candidates,
        system,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(points: &[f64], d: usize) -> (DataSet, BallSystem, AugmentedDataSet) {
        let data = DataSet::from_flat(points.to_vec(), d).unwrap();
        let table = build_distance_table(&data).unwrap();
        let sys = build_ball_system::<&[f64]>(&data, table, &[]).unwrap();
        let cand = AugmentedDataSet::plain(data.clone()).unwrap();
        (data, sys, cand)
    }

    #[test]
    fn ball_size_formula() {
        // n = 3, alpha = 1/3: floor(3 * 2/3 + 1) = 3, then 2, then 1.
        let a = Alpha::for_dimension(2);
        assert_eq!(ball_size_at(3, a, 1), 3);
        assert_eq!(ball_size_at(3, a, 2), 2);
        assert_eq!(ball_size_at(3, a, 3), 1);
        // n = 1000, d = 2: floor(1000 * 2/3 + 1) = 667.
        assert_eq!(ball_size_at(1000, a, 1), 667);
        assert_eq!(ball_size_at(1000, a, 2), 666);
        // Exact boundary: n = 6, alpha = 1/2 gives 6 * 1/2 + 1 = 4 exactly.
        assert_eq!(ball_size_at(6, Alpha::new(1, 2).unwrap(), 1), 4);
        assert_eq!(ball_size_at(5, Alpha::new(1, 1).unwrap(), 1), 1);
    }

    #[test]
    fn start_level_validated() {
        assert!(Alpha::new(0, 3).is_err());
        assert!(Alpha::new(4, 3).is_err());
        assert!(Alpha::new(1, 0).is_err());
        let (data, sys, cand) = plain(&[0.0, 1.0], 1);
        let bad = Alpha {
            numerator: 3,
            denominator: 2,
        };
        assert!(compute_level_sets(&data, &sys, &cand, Some(bad)).is_err());
    }

    #[test]
    fn two_points_in_one_dimension() {
        let (data, sys, cand) = plain(&[0.0, 1.0], 1);
        let levels = compute_level_sets(&data, &sys, &cand, None).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].ball_size, 2);
        assert_eq!(levels[0].depth, Depth::new(1, 2));
        assert_eq!(levels[0].members, vec![0, 1]);
    }

    #[test]
    fn identical_points_form_one_level() {
        let (data, sys, cand) = plain(&[2.0, 2.0, 2.0, 2.0, 2.0, 2.0], 2);
        let levels = compute_level_sets(&data, &sys, &cand, None).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].depth, Depth::new(3, 3));
        assert_eq!(levels[0].members, vec![0, 1, 2]);
    }

    #[test]
    fn single_point() {
        let data = DataSet::new(&[[1.0, 2.0]]).unwrap();
        let r = tukey_median(&data, &MedianOptions::default()).unwrap();
        assert_eq!(r.depth, Depth::new(1, 1));
        assert_eq!(r.median, vec![0]);
    }

    #[test]
    fn odd_one_dimensional_sample_has_single_median() {
        let (data, sys, cand) = plain(&[4.0, -1.0, 0.5, 9.0, 2.0], 1);
        let levels = compute_level_sets(&data, &sys, &cand, None).unwrap();
        let last = levels.last().unwrap();
        assert_eq!(last.members, vec![4]);
        assert_eq!(last.depth, Depth::new(3, 5));
    }

    #[test]
    fn empty_start_level_backs_off() {
        // Balls of size 3 around each corner miss the opposite corner.
        let sq = DataSet::new(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let m = tukey_median(&sq, &MedianOptions::default()).unwrap();
        assert_eq!((m.depth, m.ball_size), (Depth::new(1, 4), 4));
        assert_eq!(m.median, vec![0, 1, 2, 3]);
        assert_eq!(m.levels.len(), 1);
        let m = tukey_median(&sq, &MedianOptions::with_artificial(400, 1)).unwrap();
        assert_eq!(m.depth, Depth::new(2, 4));
    }

    #[test]
    fn levels_match_explicit_intersection() {
        let pts = [
            0.0, 0.0, 1.0, 0.2, 0.3, 1.1, -0.7, 0.4, 0.5, -0.9, 2.0, 1.5, -1.2, -0.3, 0.1, 0.6,
        ];
        let data = DataSet::from_flat(pts.to_vec(), 2).unwrap();
        let opts = MedianOptions {
            artificial_count: 40,
            seed: 3,
            ..Default::default()
        };
        let run = tukey_median_detailed(&data, &opts).unwrap();
        for lvl in &run.result.levels {
            let brute: Vec<usize> = (0..run.candidates.len())
                .filter(|&i| {
                    let x = run.candidates.point(i);
                    (0..run.system.num_centers()).all(|j| {
                        let c = run.system.center_point(&data, j);
                        crate::balls::ball_contains(c, run.system.radius(j, lvl.ball_size), x)
                            .unwrap()
                    })
                })
                .collect();
            assert_eq!(brute, lvl.members, "ball size {}", lvl.ball_size);
        }
    }
}
