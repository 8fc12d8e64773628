use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, Trim, WriterBuilder};

use super::json::{ContourRecord, LevelSetRecord};
use crate::augment::AugmentedDataSet;
use crate::data::DataSet;
use crate::error::{DepthError, Result};

fn parse_cell(cell: &str) -> Option<f64> {
    // Typeset minus signs show up in copied tables.
    let cell = cell.replace('\u{2212}', "-");
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads comma-separated rows of numbers. A first row with any non-numeric
/// cell is taken as a header and skipped. Row numbers in errors are
/// 1-based file lines.
pub fn read_points_csv<R: Read>(reader: R) -> Result<DataSet> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);

    let mut coords = Vec::new();
    let mut width = None;
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let parsed: Vec<Option<f64>> = record.iter().map(parse_cell).collect();
        if i == 0 && parsed.iter().any(Option::is_none) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(DepthError::RaggedRow {
                row,
                expected,
                found: record.len(),
            });
        }
        for (column, (value, raw)) in parsed.iter().zip(record.iter()).enumerate() {
            match value {
                Some(v) => coords.push(*v),
                None => {
                    return Err(DepthError::BadNumber {
                        row,
                        column: column + 1,
                        value: raw.to_string(),
                    })
                }
            }
        }
    }
    match width {
        None => Err(DepthError::EmptyData),
        Some(dim) => DataSet::from_flat(coords, dim),
    }
}

pub fn read_points_path(path: &Path) -> Result<DataSet> {
    read_points_csv(File::open(path)?)
}

fn fmt(v: f64) -> String {
    // `Display` for f64 prints the shortest string that parses back exactly.
    format!("{v}")
}

fn coord_header(dim: usize) -> impl Iterator<Item = String> {
    (1..=dim).map(|k| format!("x{k}"))
}

/// Writes one row per point with no header, so output feeds straight back
/// into [`read_points_csv`].
pub fn write_points_csv<W: Write>(data: &DataSet, writer: W) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    for p in data.points() {
        w.write_record(p.iter().map(|&v| fmt(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Sample and artificial points with a `kind` column.
pub fn write_augmented_csv<W: Write>(aug: &AugmentedDataSet, writer: W) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    w.write_record(
        ["index".to_string(), "kind".to_string()]
            .into_iter()
            .chain(coord_header(aug.dim())),
    )?;
    for (i, p) in aug.points().enumerate() {
        let kind = if aug.is_artificial(i) {
            "artificial"
        } else {
            "sample"
        };
        w.write_record(
            [i.to_string(), kind.to_string()]
                .into_iter()
                .chain(p.iter().map(|&v| fmt(v))),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// One row per (level, member) pair.
pub fn write_level_sets_csv<W: Write>(
    levels: &[LevelSetRecord],
    dim: usize,
    writer: W,
) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    let head = ["numerator", "denominator", "depth", "ball_size", "index"];
    w.write_record(head.iter().map(|s| s.to_string()).chain(coord_header(dim)))?;
    for level in levels {
        for (idx, p) in level.members.iter().zip(&level.points) {
            let lead = [
                level.depth.numerator.to_string(),
                level.depth.denominator.to_string(),
                fmt(level.depth.value()),
                level.ball_size.to_string(),
                idx.to_string(),
            ];
            w.write_record(lead.into_iter().chain(p.iter().map(|&v| fmt(v))))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One row per polygon vertex, in boundary order.
pub fn write_contours_csv<W: Write>(contours: &[ContourRecord], writer: W) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    w.write_record(["numerator", "denominator", "depth", "vertex", "x", "y"])?;
    for c in contours {
        for (k, v) in c.vertices.iter().enumerate() {
            w.write_record([
                c.depth.numerator.to_string(),
                c.depth.denominator.to_string(),
                fmt(c.depth.value()),
                k.to_string(),
                fmt(v[0]),
                fmt(v[1]),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
