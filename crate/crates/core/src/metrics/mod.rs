//! Measurements over simulation output, and the CSV files they are written to.

mod flocking;
mod foraging;
mod stats;
mod table;

use std::path::PathBuf;

use thiserror::Error;

pub use flocking::{
    heading_difference, pairwise_stats, BirdGroup, PairwiseStats, COLLISION_DISTANCE, NEIGHBOR_DISTANCE,
    NEIGHBOR_HEADING,
};
pub use foraging::{food_timeseries, search_statistics, trip_statistics};
pub use stats::{aggregate_runs, mean, percentile_sorted, std_dev, summarize, Summary};
pub use table::{
    float_field, read_rows, write_rows, CsvRow, FoodRow, HeadingRow, PairwiseRow, PositionCsvRow, SearchRow, TripRow,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("no data")]
    Empty,
    #[error("series have different lengths")]
    Misaligned,
    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },
}
