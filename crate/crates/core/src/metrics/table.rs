//! Fixed-schema CSV outputs.

use std::path::Path;

use super::MetricsError;
use crate::ants::{SearchRecord, TripRecord};

/// Six decimals; `None` becomes an empty field.
pub fn float_field(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| format!("{v:.6}"))
}

pub trait CsvRow {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoodRow {
    pub tick: u64,
    pub run: u64,
    pub food: u64,
}

impl CsvRow for FoodRow {
    const HEADER: &'static [&'static str] = &["tick", "run", "food"];
    fn fields(&self) -> Vec<String> {
        vec![self.tick.to_string(), self.run.to_string(), self.food.to_string()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripRow {
    pub run: u64,
    pub trip: TripRecord,
}

impl CsvRow for TripRow {
    const HEADER: &'static [&'static str] = &["run", "agent", "patch", "pickup", "drop"];
    fn fields(&self) -> Vec<String> {
        let t = &self.trip;
        vec![self.run.to_string(), t.agent.to_string(), t.patch.to_string(), t.pickup.to_string(), t.drop.to_string()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRow {
    pub run: u64,
    pub search: SearchRecord,
}

impl CsvRow for SearchRow {
    const HEADER: &'static [&'static str] = &["run", "agent", "patch", "start", "pickup"];
    fn fields(&self) -> Vec<String> {
        let s = &self.search;
        vec![self.run.to_string(), s.agent.to_string(), s.patch.to_string(), s.start.to_string(), s.pickup.to_string()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeadingRow {
    pub tick: u64,
    pub run: u64,
    pub group: &'static str,
    pub mean: f64,
    pub std: f64,
}

impl CsvRow for HeadingRow {
    const HEADER: &'static [&'static str] = &["tick", "run", "group", "mean", "std"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.tick.to_string(),
            self.run.to_string(),
            self.group.to_string(),
            float_field(Some(self.mean)),
            float_field(Some(self.std)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseRow {
    pub tick: u64,
    pub run: u64,
    pub collisions: usize,
    pub mean_neighbors_llm: Option<f64>,
    pub mean_neighbors_rule: Option<f64>,
    pub collisions_cumulative: u64,
}

impl CsvRow for PairwiseRow {
    const HEADER: &'static [&'static str] =
        &["tick", "run", "collisions", "mean_neighbors_llm", "mean_neighbors_rule", "collisions_cumulative"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.tick.to_string(),
            self.run.to_string(),
            self.collisions.to_string(),
            float_field(self.mean_neighbors_llm),
            float_field(self.mean_neighbors_rule),
            self.collisions_cumulative.to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionCsvRow {
    pub tick: u64,
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub is_llm: bool,
}

impl CsvRow for PositionCsvRow {
    const HEADER: &'static [&'static str] = &["tick", "id", "x", "y", "heading", "is_llm"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.tick.to_string(),
            self.id.to_string(),
            float_field(Some(self.x)),
            float_field(Some(self.y)),
            float_field(Some(self.heading)),
            self.is_llm.to_string(),
        ]
    }
}

fn csv_error(path: &Path, e: impl std::fmt::Display) -> MetricsError {
    MetricsError::Csv { path: path.to_path_buf(), message: e.to_string() }
}

/// Writes `rows` under the row type's header, LF-terminated.
pub fn write_rows<'a, R: CsvRow + 'a>(path: &Path, rows: impl IntoIterator<Item = &'a R>) -> Result<(), MetricsError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    w.write_record(R::HEADER).map_err(|e| csv_error(path, e))?;
    for r in rows {
        w.write_record(r.fields()).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| csv_error(path, e))
}

/// Reads a CSV written by [`write_rows`], checking its header.
pub fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>, MetricsError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let got = r.headers().map_err(|e| csv_error(path, e))?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(csv_error(path, format!("unexpected header {:?}", got.iter().collect::<Vec<_>>())));
    }
    r.records().map(|rec| rec.map_err(|e| csv_error(path, e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lf_and_six_decimals() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("pairwise.csv");
        let row = PairwiseRow {
            tick: 1,
            run: 7,
            collisions: 2,
            mean_neighbors_llm: None,
            mean_neighbors_rule: Some(1.0 / 3.0),
            collisions_cumulative: 5,
        };
        write_rows(&p, [&row]).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(
            text,
            "tick,run,collisions,mean_neighbors_llm,mean_neighbors_rule,collisions_cumulative\n1,7,2,,0.333333,5\n"
        );
        let rows = read_rows(&p, PairwiseRow::HEADER).unwrap();
        assert_eq!(&rows[0][4], "0.333333");
        assert!(read_rows(&p, FoodRow::HEADER).is_err());
    }
}
