use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::execute::{FOOD_FILE, PAIRWISE_FILE, SEARCHES_FILE, TRIPS_FILE};
use super::RunError;
use crate::metrics::{mean, read_rows, std_dev, summarize as summary_of, CsvRow, FoodRow, PairwiseRow, SearchRow, Summary, TripRow};

pub const SUMMARY_FILE: &str = "summary.csv";

/// One table line: a label pair and a seven-number summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryLine {
    pub table: &'static str,
    pub label: String,
    pub stats: Summary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub lines: Vec<SummaryLine>,
    /// Final colony food per run, for ant runs.
    pub final_food: Vec<(u64, u64)>,
    pub summary_path: PathBuf,
}

impl RunSummary {
    /// Console rendering, one table per kind of line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        if !self.final_food.is_empty() {
            let v: Vec<f64> = self.final_food.iter().map(|&(_, f)| f as f64).collect();
            let _ = writeln!(
                s,
                "final food over {} runs: mean {:.2}, std {:.2}",
                v.len(),
                mean(&v).unwrap_or(0.0),
                std_dev(&v, 0).unwrap_or(0.0)
            );
        }
        let mut current = "";
        for l in &self.lines {
            if l.table != current {
                current = l.table;
                let _ = writeln!(
                    s,
                    "\n{current}\n{:<16} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>6}",
                    "", "mean", "median", "std", "min", "20%", "50%", "75%", "max", "n"
                );
            }
            let t = &l.stats;
            let _ = writeln!(
                s,
                "{:<16} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>6}",
                l.label, t.mean, t.p50, t.std, t.min, t.p20, t.p50, t.p75, t.max, t.n
            );
        }
        s
    }
}

fn num<T: std::str::FromStr>(path: &Path, field: &str) -> Result<T, RunError> {
    field
        .parse()
        .map_err(|_| RunError::Io { path: path.to_path_buf(), message: format!("bad number {field:?}") })
}

fn per_patch(path: &Path, header: &[&str], steps: impl Fn(u64, u64) -> u64) -> Result<BTreeMap<u8, Vec<f64>>, RunError> {
    let mut groups: BTreeMap<u8, Vec<f64>> = BTreeMap::new();
    for r in read_rows(path, header)? {
        let patch: u8 = num(path, &r[2])?;
        let a: u64 = num(path, &r[3])?;
        let b: u64 = num(path, &r[4])?;
        groups.entry(patch).or_default().push(steps(a, b) as f64);
    }
    Ok(groups)
}

/// Reads the metric CSVs of a run directory and reproduces the result tables: per-patch
/// return and search steps for ant runs, neighbor counts for flocking runs. Also writes
/// `summary.csv` into the directory.
pub fn summarize(dir: &Path) -> Result<RunSummary, RunError> {
    let mut lines = Vec::new();
    let mut final_food = Vec::new();
    let trips = dir.join(TRIPS_FILE);
    let pairwise = dir.join(PAIRWISE_FILE);
    if trips.exists() {
        for (p, v) in per_patch(&trips, TripRow::HEADER, |pickup, drop| drop - pickup)? {
            lines.push(SummaryLine { table: "steps to return food", label: format!("patch {p}"), stats: summary_of(&v).expect("non-empty") });
        }
        let searches = dir.join(SEARCHES_FILE);
        for (p, v) in per_patch(&searches, SearchRow::HEADER, |start, pickup| pickup - start)? {
            lines.push(SummaryLine { table: "steps to find food", label: format!("patch {p}"), stats: summary_of(&v).expect("non-empty") });
        }
        let food = dir.join(FOOD_FILE);
        let mut last: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
        for r in read_rows(&food, FoodRow::HEADER)? {
            let (tick, run, f): (u64, u64, u64) = (num(&food, &r[0])?, num(&food, &r[1])?, num(&food, &r[2])?);
            let e = last.entry(run).or_insert((tick, f));
            if tick >= e.0 {
                *e = (tick, f);
            }
        }
        final_food = last.into_iter().map(|(run, (_, f))| (run, f)).collect();
    } else if pairwise.exists() {
        let (mut llm, mut rule, mut collisions) = (Vec::new(), Vec::new(), Vec::new());
        for r in read_rows(&pairwise, PairwiseRow::HEADER)? {
            collisions.push(num::<f64>(&pairwise, &r[2])?);
            if !r[3].is_empty() {
                llm.push(num::<f64>(&pairwise, &r[3])?);
            }
            if !r[4].is_empty() {
                rule.push(num::<f64>(&pairwise, &r[4])?);
            }
        }
        let hybrid = !llm.is_empty() && !rule.is_empty();
        for (label, v) in [("llm", llm), ("rule_based", rule)] {
            if let Some(stats) = summary_of(&v) {
                let label = if hybrid { format!("hybrid {label}") } else { label.to_string() };
                lines.push(SummaryLine { table: "mean neighbors per bird", label, stats });
            }
        }
        if let Some(stats) = summary_of(&collisions) {
            lines.push(SummaryLine { table: "collisions per tick", label: "all birds".into(), stats });
        }
    } else {
        return Err(RunError::NoRuns(dir.to_path_buf()));
    }

    let summary_path = dir.join(SUMMARY_FILE);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&summary_path)
        .map_err(|e| RunError::Io { path: summary_path.clone(), message: e.to_string() })?;
    let f = |v: f64| format!("{v:.6}");
    let rows = std::iter::once(
        ["table", "label", "n", "mean", "median", "std", "min", "p20", "p50", "p75", "max"].map(String::from),
    )
    .chain(lines.iter().map(|l| {
        let t = &l.stats;
        [
            l.table.to_string(),
            l.label.clone(),
            t.n.to_string(),
            f(t.mean),
            f(t.p50),
            f(t.std),
            f(t.min),
            f(t.p20),
            f(t.p50),
            f(t.p75),
            f(t.max),
        ]
    }));
    for row in rows {
        w.write_record(&row).map_err(|e| RunError::Io { path: summary_path.clone(), message: e.to_string() })?;
    }
    w.flush().map_err(|e| RunError::Io { path: summary_path.clone(), message: e.to_string() })?;
    Ok(RunSummary { lines, final_food, summary_path })
}
