#![allow(dead_code)]

use halfspace_depth::augment::{augment, bounding_domain};
use halfspace_depth::balls::{ball_contains, build_ball_system};
use halfspace_depth::data::euclidean;
use halfspace_depth::engine::{compute_level_sets, sample_depths};
use halfspace_depth::synth::{generate, GeneratorSpec};
use halfspace_depth::{build_distance_table, depth_of_out_of_sample_point, DataSet, MedianOptions};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

/// Planar points with coordinates in [-10, 10].
pub fn planar(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DataSet> {
    prop::collection::vec([-10.0f64..10.0, -10.0f64..10.0], n)
        .prop_map(|pts| DataSet::new(&pts).unwrap())
}

/// Points on a grid of multiples of 1/4: sums of squares are exact, so
/// distances do not depend on coordinate order. Repeats and collinear
/// triples are common.
pub fn dyadic(n: std::ops::RangeInclusive<usize>, d: usize) -> impl Strategy<Value = DataSet> {
    prop::collection::vec(prop::collection::vec(-40i32..=40, d), n).prop_map(|pts| {
        let pts: Vec<Vec<f64>> = pts
            .into_iter()
            .map(|p| p.into_iter().map(|v| v as f64 / 4.0).collect())
            .collect();
        DataSet::new(&pts).unwrap()
    })
}

/// Every level lies inside the previous one and depths strictly increase.
pub fn check_nested(data: &DataSet, artificial: usize, seed: u64) -> Check {
    let (cands, system) = MedianOptions::with_artificial(artificial, seed)
        .prepare(data)
        .unwrap();
    let levels = compute_level_sets(data, &system, &cands, None).unwrap();
    prop_assert!(!levels.is_empty());
    for w in levels.windows(2) {
        prop_assert!(w[0].depth < w[1].depth);
        prop_assert!(w[1].ball_size < w[0].ball_size);
        let outer: std::collections::BTreeSet<_> = w[0].members.iter().collect();
        prop_assert!(w[1].members.iter().all(|i| outer.contains(i)));
    }
    Ok(())
}

/// Depth does not drop below its endpoint values on a segment from a
/// deepest sample point: the approximate regions are intersections of
/// balls, hence convex.
pub fn check_center_monotone(data: &DataSet, target: &[f64], t: f64) -> Check {
    let (_, system) = MedianOptions::default().prepare(data).unwrap();
    let depths = sample_depths(data, &system);
    let deepest = (0..data.len()).max_by_key(|&i| depths[i]).unwrap();
    let c = data.point(deepest);
    let y: Vec<f64> = c.iter().zip(target).map(|(a, b)| a + t * (b - a)).collect();
    let dx = depth_of_out_of_sample_point(data, &system, target)
        .unwrap()
        .depth;
    let dy = depth_of_out_of_sample_point(data, &system, &y)
        .unwrap()
        .depth;
    prop_assert!(
        dy >= dx.min(depths[deepest]),
        "{} < min({}, {})",
        dy,
        dx,
        depths[deepest]
    );
    Ok(())
}

/// Permuting coordinates, flipping signs and translating by grid values
/// leaves every sample depth and an out-of-sample depth unchanged.
pub fn check_isometry(
    data: &DataSet,
    query: &[f64],
    perm: &[usize],
    flips: &[bool],
    shift: &[f64],
) -> Check {
    let map = |p: &[f64]| -> Vec<f64> {
        perm.iter()
            .enumerate()
            .map(|(k, &src)| {
                let v = if flips[k] { -p[src] } else { p[src] };
                v + shift[k]
            })
            .collect()
    };
    let moved = DataSet::new(&data.points().map(map).collect::<Vec<_>>()).unwrap();
    let (_, a) = MedianOptions::default().prepare(data).unwrap();
    let (_, b) = MedianOptions::default().prepare(&moved).unwrap();
    prop_assert_eq!(sample_depths(data, &a), sample_depths(&moved, &b));
    let da = depth_of_out_of_sample_point(data, &a, query).unwrap();
    let db = depth_of_out_of_sample_point(&moved, &b, &map(query)).unwrap();
    prop_assert_eq!(da.depth, db.depth);
    prop_assert_eq!(da.exit_ball_size, db.exit_ball_size);
    Ok(())
}

/// A point at exactly the radius is inside the closed ball, for the free
/// function and for every ball of the system.
pub fn check_boundary(data: &DataSet, m: usize) -> Check {
    let n = data.len();
    let m = 1 + m % n;
    let table = build_distance_table(data).unwrap();
    let system = build_ball_system(data, table, &[] as &[&[f64]]).unwrap();
    for j in 0..n {
        let r = system.ball_radius(j, m).unwrap();
        for i in 0..n {
            let d = system.sample_to_center(data, i, j);
            prop_assert_eq!(
                d <= r,
                ball_contains(data.point(j), r, data.point(i)).unwrap()
            );
            if d == r {
                prop_assert!(system.entry_size(j, d) <= m);
            }
        }
        // The m-th nearest sample point sits on the boundary.
        let hits = (0..n)
            .filter(|&i| system.sample_to_center(data, i, j) <= r)
            .count();
        prop_assert!(hits >= m);
        let far = data
            .points()
            .find(|p| euclidean(data.point(j), p) == r)
            .unwrap();
        prop_assert!(ball_contains(data.point(j), r, far).unwrap());
    }
    Ok(())
}

/// Same seed, same points; a smaller count is a prefix; generators repeat.
pub fn check_seed_determinism(data: &DataSet, count: usize, seed: u64) -> Check {
    let domain = bounding_domain(data, 0.1).unwrap();
    let a = augment(data, count, seed, &domain).unwrap();
    let b = augment(data, count, seed, &domain).unwrap();
    prop_assert_eq!(a.artificial_flat(), b.artificial_flat());
    let short = augment(data, count / 2, seed, &domain).unwrap();
    let k = short.artificial_flat().len();
    prop_assert_eq!(short.artificial_flat(), &a.artificial_flat()[..k]);
    for p in a.artificial_points() {
        prop_assert!(domain.contains(p));
    }
    for spec in [
        GeneratorSpec::normal(count.max(1), data.dim(), seed),
        GeneratorSpec::ring(count.max(1), seed),
    ] {
        prop_assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }
    Ok(())
}
