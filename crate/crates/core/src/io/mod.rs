//! CSV point files and JSON result documents.

mod csv;
mod json;

pub use self::csv::{
    read_points_csv, read_points_path, write_augmented_csv, write_contours_csv,
    write_level_sets_csv, write_points_csv,
};
pub use self::json::{
    read_result_json, write_result_json, ContourRecord, LevelSetRecord, Metadata, Payload,
    ResultDocument,
};
