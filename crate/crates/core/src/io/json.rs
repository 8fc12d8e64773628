use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::bench::{AccuracyReport, ScalingReport, VerifyReport};
use crate::depth::Depth;
use crate::engine::{DepthResult, MedianResult};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub d: usize,
    pub artificial: usize,
    pub distant_centers: usize,
    pub margin: f64,
    /// Wall time of the computation in seconds, excluding I/O.
    pub elapsed_seconds: Option<f64>,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed: None,
            n: 0,
            d: 0,
            artificial: 0,
            distant_centers: 0,
            margin: crate::augment::DEFAULT_MARGIN,
            elapsed_seconds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSetRecord {
    pub depth: Depth,
    pub ball_size: usize,
    pub members: Vec<usize>,
    pub points: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourRecord {
    pub depth: Depth,
    pub ball_size: usize,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Median(MedianResult),
    Depth(DepthResult),
    Depths { results: Vec<DepthResult> },
    LevelSets { levels: Vec<LevelSetRecord> },
    Contours { contours: Vec<ContourRecord> },
    Accuracy(AccuracyReport),
    Scaling(ScalingReport),
    Verify(VerifyReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub metadata: Metadata,
    pub payload: Payload,
}

/// Pretty-printed, fields in declaration order, floats in shortest
/// round-trip form; identical documents give identical bytes.
pub fn write_result_json<W: Write>(doc: &ResultDocument, mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, doc)?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}

pub fn read_result_json<R: Read>(reader: R) -> Result<ResultDocument> {
    Ok(serde_json::from_reader(reader)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::DepthMode;
    use crate::{tukey_median, DataSet, MedianOptions};

    fn bytes(doc: &ResultDocument) -> Vec<u8> {
        let mut out = Vec::new();
        write_result_json(doc, &mut out).unwrap();
        out
    }

    #[test]
    fn depth_as_pair_and_decimal() {
        let doc = ResultDocument {
            metadata: Metadata::new("depth"),
            payload: Payload::Depth(DepthResult {
                point: vec![0.5, 0.25],
                index: None,
                depth: Depth::new(9, 23),
                exit_ball_size: Some(14),
                mode: DepthMode::OutOfSample,
            }),
        };
        let text = String::from_utf8(bytes(&doc)).unwrap();
        assert!(text.contains("\"numerator\": 9"));
        assert!(text.contains("\"denominator\": 23"));
        assert!(text.contains("\"value\": 0.391304347826087"));
        assert_eq!(read_result_json(text.as_bytes()).unwrap(), doc);
    }

    #[test]
    fn median_round_trip_and_stable_bytes() {
        let data = DataSet::new(&[[0.0, 1.0], [-1.0, 0.0], [1.0, 0.0], [0.1, 0.2]]).unwrap();
        let median = tukey_median(&data, &MedianOptions::with_artificial(50, 3)).unwrap();
        let mut metadata = Metadata::new("median");
        metadata.seed = Some(3);
        metadata.elapsed_seconds = Some(1.0 / 3.0);
        let doc = ResultDocument {
            metadata,
            payload: Payload::Median(median),
        };
        let first = bytes(&doc);
        assert_eq!(first, bytes(&doc.clone()));
        let back = read_result_json(first.as_slice()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(bytes(&back), first);
    }

    #[test]
    fn singleton_contour_round_trip() {
        let doc = ResultDocument {
            metadata: Metadata::new("contour"),
            payload: Payload::Contours {
                contours: vec![ContourRecord {
                    depth: Depth::new(1, 1),
                    ball_size: 1,
                    vertices: vec![[2.0, -3.5]],
                }],
            },
        };
        assert_eq!(read_result_json(bytes(&doc).as_slice()).unwrap(), doc);
    }
}
