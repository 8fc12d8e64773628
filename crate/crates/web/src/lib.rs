//! Browser bindings: depth contours, the depth of a clicked point and
//! synthetic samples. Points cross the boundary as flat `[x0, y0, x1, y1,
//! ...]` arrays and results come back as JSON strings.

use halfspace_depth::engine::tukey_median_detailed;
use halfspace_depth::synth::{generate, Distribution, GeneratorSpec};
use halfspace_depth::{
    contour_2d, depth_of_out_of_sample_point, DataSet, Depth, DepthError, MedianOptions,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct Contour {
    pub depth: Depth,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ContourView {
    pub contours: Vec<Contour>,
    pub median: Vec<[f64; 2]>,
    pub centroid: [f64; 2],
    pub depth: Depth,
}

#[derive(Debug, Serialize)]
pub struct PointDepth {
    pub depth: Depth,
    pub exit_ball_size: Option<usize>,
}

fn planar(coords: &[f64]) -> Result<DataSet, DepthError> {
    if !coords.len().is_multiple_of(2) {
        return Err(DepthError::InvalidArgument(
            "coordinate array must have even length".into(),
        ));
    }
    DataSet::from_flat(coords.to_vec(), 2)
}

/// Hulls of every depth region, deepest last, and the median set.
pub fn contours_of(
    coords: &[f64],
    artificial: usize,
    seed: u64,
) -> Result<ContourView, DepthError> {
    let data = planar(coords)?;
    let run = tukey_median_detailed(&data, &MedianOptions::with_artificial(artificial, seed))?;
    let contours = run
        .result
        .levels
        .iter()
        .map(|level| {
            Ok(Contour {
                depth: level.depth,
                vertices: contour_2d(level, &run.candidates)?,
            })
        })
        .collect::<Result<_, DepthError>>()?;
    let c = run.result.centroid();
    Ok(ContourView {
        contours,
        median: run
            .result
            .median_points
            .iter()
            .map(|p| [p[0], p[1]])
            .collect(),
        centroid: [c[0], c[1]],
        depth: run.result.depth,
    })
}

pub fn depth_at(
    coords: &[f64],
    x: f64,
    y: f64,
    artificial: usize,
    seed: u64,
) -> Result<PointDepth, DepthError> {
    let data = planar(coords)?;
    let (_, system) = MedianOptions::with_artificial(artificial, seed).prepare(&data)?;
    let r = depth_of_out_of_sample_point(&data, &system, &[x, y])?;
    Ok(PointDepth {
        depth: r.depth,
        exit_ball_size: r.exit_ball_size,
    })
}

pub fn sample_of(dist: &str, n: usize, seed: u64) -> Result<Vec<f64>, DepthError> {
    let kind: Distribution = dist.parse()?;
    let spec = match kind {
        Distribution::Normal => GeneratorSpec::normal(n, 2, seed),
        Distribution::Ring => GeneratorSpec::ring(n, seed),
        Distribution::Triangle => GeneratorSpec::triangle(),
    };
    Ok(generate(&spec)?.as_flat().to_vec())
}

fn js<T: Serialize>(r: Result<T, DepthError>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn contours(coords: &[f64], artificial: u32, seed: u32) -> Result<String, JsError> {
    js(contours_of(coords, artificial as usize, seed.into()))
}

#[wasm_bindgen(js_name = pointDepth)]
pub fn point_depth(
    coords: &[f64],
    x: f64,
    y: f64,
    artificial: u32,
    seed: u32,
) -> Result<String, JsError> {
    js(depth_at(coords, x, y, artificial as usize, seed.into()))
}

#[wasm_bindgen]
pub fn sample(dist: &str, n: u32, seed: u32) -> Result<Vec<f64>, JsError> {
    sample_of(dist, n as usize, seed.into()).map_err(|e| JsError::new(&e.to_string()))
}
