use serde::Serialize;

/// Seven-number summary: mean, sample standard deviation, min, 20/50/75th percentiles, max.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub p20: f64,
    pub p50: f64,
    pub p75: f64,
    pub max: f64,
}

/// Percentile of sorted data with linear interpolation between closest ranks,
/// `q` in [0, 1]. Position `q * (n - 1)`.
pub fn percentile_sorted(sorted: &[f64], q: f64) -> Option<f64> {
    let n = sorted.len();
    if n == 0 {
        return None;
    }
    let pos = q.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    Some(sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64))
}

pub fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Standard deviation with divisor `n - ddof`; 0 when that divisor is not positive.
pub fn std_dev(values: &[f64], ddof: usize) -> Option<f64> {
    let m = mean(values)?;
    let dof = values.len().saturating_sub(ddof);
    if dof == 0 {
        return Some(0.0);
    }
    Some((values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / dof as f64).sqrt())
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(Summary {
        n: values.len(),
        mean: mean(values)?,
        std: std_dev(values, 1)?,
        min: *sorted.first()?,
        p20: percentile_sorted(&sorted, 0.20)?,
        p50: percentile_sorted(&sorted, 0.50)?,
        p75: percentile_sorted(&sorted, 0.75)?,
        max: *sorted.last()?,
    })
}

/// Per-tick mean and population standard deviation across runs.
pub fn aggregate_runs(series: &[Vec<f64>]) -> Result<Vec<(f64, f64)>, super::MetricsError> {
    let len = series.first().ok_or(super::MetricsError::Empty)?.len();
    if series.iter().any(|s| s.len() != len) {
        return Err(super::MetricsError::Misaligned);
    }
    Ok((0..len)
        .map(|t| {
            let column: Vec<f64> = series.iter().map(|s| s[t]).collect();
            (mean(&column).expect("non-empty"), std_dev(&column, 0).expect("non-empty"))
        })
        .collect())
}
