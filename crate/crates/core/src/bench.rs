//! Accuracy, scaling and exactness harnesses.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use csv::WriterBuilder;
use serde::{Deserialize, Serialize};

use crate::data::DataSet;
use crate::depth::Depth;
use crate::engine::{sample_depths, tukey_median, MedianOptions};
use crate::error::{DepthError, Result};
use crate::oracle::{exact_depth_1d, exact_depth_2d};
use crate::stats::chi_square_cdf;
use crate::synth::{generate, GeneratorSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchGrid {
    pub ns: Vec<usize>,
    pub ds: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
}

impl BenchGrid {
    pub fn new(ns: Vec<usize>, ds: Vec<usize>, reps: usize, seed: u64) -> Result<Self> {
        let grid = Self { ns, ds, reps, seed };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(DepthError::InvalidSpec(m.to_string()));
        if self.ns.is_empty() || self.ds.is_empty() {
            return bad("grid needs at least one n and one d");
        }
        if self.ns.iter().any(|&n| n < 2) {
            return bad("grid n values must be at least 2");
        }
        if self.ds.contains(&0) {
            return bad("grid d values must be at least 1");
        }
        if self.reps == 0 {
            return bad("grid needs at least one repetition");
        }
        Ok(())
    }

    /// Cells in row-major order over `(n, d)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ns
            .iter()
            .flat_map(move |&n| self.ds.iter().map(move |&d| (n, d)))
    }

    /// Seed of repetition `rep`; the same for every cell.
    pub fn trial_seed(&self, rep: usize) -> u64 {
        self.seed.wrapping_add(rep as u64)
    }
}

/// Parses `n=500,1000;d=10;reps=5;seed=3`. Missing `reps` defaults to 10
/// and missing `seed` to 0.
impl FromStr for BenchGrid {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        let mut ns = None;
        let mut ds = None;
        let mut reps = 10;
        let mut seed = 0;
        let bad = |m: String| DepthError::InvalidSpec(m);
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let list = || -> Result<Vec<usize>> {
                value
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse()
                            .map_err(|_| bad(format!("bad number {v:?} for {key}")))
                    })
                    .collect()
            };
            match key.trim() {
                "n" => ns = Some(list()?),
                "d" => ds = Some(list()?),
                "reps" => {
                    reps = value
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad reps {value:?}")))?
                }
                "seed" => {
                    seed = value
                        .trim()
                        .parse()
                        .map_err(|_| bad(format!("bad seed {value:?}")))?
                }
                other => return Err(bad(format!("unknown grid key {other:?}"))),
            }
        }
        Self::new(
            ns.ok_or_else(|| bad("grid is missing n".into()))?,
            ds.ok_or_else(|| bad("grid is missing d".into()))?,
            reps,
            seed,
        )
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyTrial {
    pub n: usize,
    pub d: usize,
    pub rep: usize,
    pub seed: u64,
    /// Squared norm of the median centroid.
    pub norm_sq: f64,
    pub p_value: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyCell {
    pub n: usize,
    pub d: usize,
    pub mean_p_value: f64,
    pub max_p_value: f64,
    pub mean_seconds: f64,
    pub max_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    pub grid: BenchGrid,
    pub artificial: usize,
    pub trials: Vec<AccuracyTrial>,
    pub cells: Vec<AccuracyCell>,
}

/// Medians of standard normal samples; the error of a median `m` is
/// `P(chi2(d) <= |m|^2)`, small when `m` is close to the true center.
/// `options.seed` is replaced by the trial seed.
pub fn run_accuracy_bench(grid: &BenchGrid, options: &MedianOptions) -> Result<AccuracyReport> {
    grid.validate()?;
    let mut trials = Vec::new();
    let mut cells = Vec::new();
    for (n, d) in grid.cells() {
        let mut ps = Vec::new();
        let mut secs = Vec::new();
        for rep in 0..grid.reps {
            let seed = grid.trial_seed(rep);
            let data = generate(&GeneratorSpec::normal(n, d, seed))?;
            let opts = MedianOptions {
                seed,
                ..options.clone()
            };
            let start = Instant::now();
            let median = tukey_median(&data, &opts)?;
            let seconds = start.elapsed().as_secs_f64();
            let norm_sq: f64 = median.centroid().iter().map(|v| v * v).sum();
            let p_value = chi_square_cdf(norm_sq, d as u32)?;
            ps.push(p_value);
            secs.push(seconds);
            trials.push(AccuracyTrial {
                n,
                d,
                rep,
                seed,
                norm_sq,
                p_value,
                seconds,
            });
        }
        cells.push(AccuracyCell {
            n,
            d,
            mean_p_value: mean(&ps),
            max_p_value: max(&ps),
            mean_seconds: mean(&secs),
            max_seconds: max(&secs),
        });
    }
    Ok(AccuracyReport {
        grid: grid.clone(),
        artificial: options.artificial_count,
        trials,
        cells,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingCell {
    pub n: usize,
    pub d: usize,
    pub reps: usize,
    pub mean_seconds: f64,
}

/// Least-squares line `time = intercept + slope * d` at fixed `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionFit {
    pub n: usize,
    pub slope: f64,
    pub intercept: f64,
    pub d_min: usize,
    pub d_max: usize,
    /// Measured `time(d_max) / time(d_min)`.
    pub ratio: f64,
    /// `d_max / d_min`, the ratio under pure proportionality; any fixed
    /// cost makes the measured ratio smaller.
    pub linear_bound: f64,
    /// Ratio predicted by the fitted line.
    pub fitted_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeRatio {
    pub d: usize,
    pub n_from: usize,
    pub n_to: usize,
    pub ratio: f64,
    /// `(n2^2 log n2) / (n1^2 log n1)`.
    pub model: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub grid: BenchGrid,
    pub cells: Vec<ScalingCell>,
    pub dimension_fits: Vec<DimensionFit>,
    pub size_ratios: Vec<SizeRatio>,
}

impl ScalingReport {
    pub fn mean_seconds(&self, n: usize, d: usize) -> Option<f64> {
        self.cells
            .iter()
            .find(|c| c.n == n && c.d == d)
            .map(|c| c.mean_seconds)
    }
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let mx = mean(xs);
    let my = mean(ys);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}

/// Times the median of a standard normal sample per cell, after one
/// untimed warm-up run. Cells run one after another.
pub fn run_scaling_bench(grid: &BenchGrid, options: &MedianOptions) -> Result<ScalingReport> {
    grid.validate()?;
    let mut cells = Vec::new();
    for (n, d) in grid.cells() {
        let data = generate(&GeneratorSpec::normal(n, d, grid.seed))?;
        let opts = MedianOptions {
            seed: grid.seed,
            ..options.clone()
        };
        tukey_median(&data, &opts)?;
        let mut secs = Vec::with_capacity(grid.reps);
        for _ in 0..grid.reps {
            let start = Instant::now();
            let m = tukey_median(&data, &opts)?;
            secs.push(start.elapsed().as_secs_f64());
            std::hint::black_box(m);
        }
        cells.push(ScalingCell {
            n,
            d,
            reps: grid.reps,
            mean_seconds: mean(&secs),
        });
    }

    let time = |n: usize, d: usize| {
        cells
            .iter()
            .find(|c| c.n == n && c.d == d)
            .map(|c| c.mean_seconds)
            .unwrap_or(f64::NAN)
    };

    let mut ds = grid.ds.clone();
    ds.sort_unstable();
    ds.dedup();
    let mut dimension_fits = Vec::new();
    if ds.len() >= 2 {
        for &n in &grid.ns {
            let xs: Vec<f64> = ds.iter().map(|&d| d as f64).collect();
            let ys: Vec<f64> = ds.iter().map(|&d| time(n, d)).collect();
            let (slope, intercept) = least_squares(&xs, &ys);
            let (lo, hi) = (ds[0], ds[ds.len() - 1]);
            dimension_fits.push(DimensionFit {
                n,
                slope,
                intercept,
                d_min: lo,
                d_max: hi,
                ratio: time(n, hi) / time(n, lo),
                linear_bound: hi as f64 / lo as f64,
                fitted_ratio: (intercept + slope * hi as f64) / (intercept + slope * lo as f64),
            });
        }
    }

    let mut ns = grid.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let model = |n: usize| {
        let n = n as f64;
        n * n * n.ln()
    };
    let mut size_ratios = Vec::new();
    for &d in &grid.ds {
        for w in ns.windows(2) {
            size_ratios.push(SizeRatio {
                d,
                n_from: w[0],
                n_to: w[1],
                ratio: time(w[1], d) / time(w[0], d),
                model: model(w[1]) / model(w[0]),
            });
        }
    }

    Ok(ScalingReport {
        grid: grid.clone(),
        cells,
        dimension_fits,
        size_ratios,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub instances: usize,
    pub n: usize,
    /// 1 or 2, where exact depths are available.
    pub d: usize,
    pub artificial: usize,
    pub seed: u64,
    pub distant_centers: Option<usize>,
    pub center_margin: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            instances: 50,
            n: 25,
            d: 2,
            artificial: 1000,
            seed: 0,
            distant_centers: None,
            center_margin: crate::augment::DEFAULT_CENTER_MARGIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyInstance {
    pub seed: u64,
    /// Fraction of sample points whose approximate depth equals the exact one.
    pub match_plain: f64,
    pub match_augmented: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramBin {
    /// Approximate minus exact depth numerator.
    pub error: i64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub instances: Vec<VerifyInstance>,
    pub mean_match_plain: f64,
    pub mean_match_augmented: f64,
    /// Fraction of instances where augmentation did not lower the match rate.
    pub augmented_not_worse: f64,
    pub histogram_plain: Vec<HistogramBin>,
    pub histogram_augmented: Vec<HistogramBin>,
}

fn exact_depths(data: &DataSet) -> Result<Vec<Depth>> {
    match data.dim() {
        1 => {
            let values = data.as_flat();
            values.iter().map(|&x| exact_depth_1d(values, x)).collect()
        }
        2 => data.points().map(|p| exact_depth_2d(data, p)).collect(),
        found => Err(DepthError::UnsupportedDimension {
            supported: "1 or 2",
            found,
        }),
    }
}

fn tally(
    hist: &mut std::collections::BTreeMap<i64, usize>,
    approx: &[Depth],
    exact: &[Depth],
) -> f64 {
    let mut hits = 0;
    for (a, e) in approx.iter().zip(exact) {
        let err = a.numerator as i64 - e.numerator as i64;
        *hist.entry(err).or_default() += 1;
        hits += usize::from(err == 0);
    }
    hits as f64 / exact.len() as f64
}

/// Compares sample-point depths with exact depths on random standard normal
/// instances, with and without artificial points.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.instances == 0 || config.n == 0 {
        return Err(DepthError::InvalidArgument(
            "verify needs at least one instance of at least one point".into(),
        ));
    }
    let mut hist_plain = std::collections::BTreeMap::new();
    let mut hist_aug = std::collections::BTreeMap::new();
    let mut instances = Vec::with_capacity(config.instances);
    for i in 0..config.instances {
        let seed = config.seed.wrapping_add(i as u64);
        let data = generate(&GeneratorSpec::normal(config.n, config.d, seed))?;
        let exact = exact_depths(&data)?;

        let (_, plain) = MedianOptions::default().prepare(&data)?;
        let approx_plain = sample_depths(&data, &plain);

        let opts = MedianOptions {
            artificial_count: config.artificial,
            seed,
            distant_centers: config.distant_centers,
            center_margin: config.center_margin,
            ..MedianOptions::default()
        };
        let (_, augmented) = opts.prepare(&data)?;
        let approx_aug = sample_depths(&data, &augmented);

        instances.push(VerifyInstance {
            seed,
            match_plain: tally(&mut hist_plain, &approx_plain, &exact),
            match_augmented: tally(&mut hist_aug, &approx_aug, &exact),
        });
    }
    let bins = |h: std::collections::BTreeMap<i64, usize>| {
        h.into_iter()
            .map(|(error, count)| HistogramBin { error, count })
            .collect()
    };
    let plain: Vec<f64> = instances.iter().map(|r| r.match_plain).collect();
    let aug: Vec<f64> = instances.iter().map(|r| r.match_augmented).collect();
    let not_worse = instances
        .iter()
        .filter(|r| r.match_augmented >= r.match_plain)
        .count() as f64
        / instances.len() as f64;
    Ok(VerifyReport {
        config: config.clone(),
        mean_match_plain: mean(&plain),
        mean_match_augmented: mean(&aug),
        augmented_not_worse: not_worse,
        instances,
        histogram_plain: bins(hist_plain),
        histogram_augmented: bins(hist_aug),
    })
}

pub fn write_accuracy_csv<W: Write>(report: &AccuracyReport, writer: W) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    for t in &report.trials {
        w.serialize(t)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_scaling_csv<W: Write>(report: &ScalingReport, writer: W) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    for c in &report.cells {
        w.serialize(c)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_verify_csv<W: Write>(report: &VerifyReport, writer: W) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    for r in &report.instances {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
