//! Brute-force references for the metrics, written without the library's helpers.

use std::collections::BTreeMap;

use swarm_llm::ants::{SearchRecord, TripRecord};

pub fn mean(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for x in v {
        s += x;
    }
    s / v.len() as f64
}

/// Variance from all pairwise squared differences: sum_{i<j} (xi - xj)^2 / (n (n - ddof)).
pub fn std(v: &[f64], ddof: usize) -> f64 {
    let n = v.len();
    if n <= ddof {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += (v[i] - v[j]).powi(2);
        }
    }
    (s / (n * (n - ddof)) as f64).sqrt()
}

/// Piecewise-linear curve through `(i / (n-1), x_(i))`, evaluated at `q` by scanning segments.
pub fn percentile(v: &[f64], q: f64) -> f64 {
    let mut s = v.to_vec();
    // insertion sort
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            j -= 1;
        }
    }
    let n = s.len();
    if n == 1 {
        return s[0];
    }
    let step = 1.0 / (n - 1) as f64;
    for i in 0..n - 1 {
        let (a, b) = (i as f64 * step, (i + 1) as f64 * step);
        if q <= b + 1e-15 || i == n - 2 {
            return s[i] + (s[i + 1] - s[i]) * ((q - a) / step);
        }
    }
    unreachable!()
}

pub fn angle_between(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % 360.0;
    d.min(360.0 - d)
}

/// (mean, population std) of |h_j - h_g| for g in members, j != g.
pub fn heading_difference(headings: &[f64], members: &[usize]) -> (f64, f64) {
    let mut d = Vec::new();
    for &g in members {
        for (j, &hj) in headings.iter().enumerate() {
            if j != g {
                d.push(angle_between(hj, headings[g]));
            }
        }
    }
    (mean(&d), std(&d, 0))
}

pub fn torus_distance(side: f64, a: (f64, f64), b: (f64, f64)) -> f64 {
    let axis = |p: f64, q: f64| {
        let d = (p - q).abs() % side;
        d.min(side - d)
    };
    axis(a.0, b.0).hypot(axis(a.1, b.1))
}

/// (collisions, per-bird neighbor counts) by checking every ordered pair.
pub fn pairwise(side: f64, pos: &[(f64, f64)], headings: &[f64]) -> (usize, Vec<usize>) {
    let n = pos.len();
    let mut ordered_collisions = 0;
    let mut counts = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = torus_distance(side, pos[i], pos[j]);
            if d <= 1.0 {
                ordered_collisions += 1;
            } else if d <= 5.0 && angle_between(headings[i], headings[j]) <= 15.0 {
                counts[i] += 1;
            }
        }
    }
    (ordered_collisions / 2, counts)
}

pub fn aggregate(series: &[Vec<f64>]) -> Vec<(f64, f64)> {
    (0..series[0].len())
        .map(|t| {
            let col: Vec<f64> = series.iter().map(|s| s[t]).collect();
            (mean(&col), std(&col, 0))
        })
        .collect()
}

pub fn food_series(trips: &[TripRecord], steps: u64) -> Vec<u64> {
    (0..=steps).map(|t| trips.iter().filter(|r| r.drop <= t).count() as u64).collect()
}

/// Per patch: sorted durations.
pub fn durations_by_patch(items: &[(u8, u64)]) -> BTreeMap<u8, Vec<f64>> {
    let mut m: BTreeMap<u8, Vec<f64>> = BTreeMap::new();
    for &(p, d) in items {
        m.entry(p).or_default().push(d as f64);
    }
    m
}

pub fn trip_durations(trips: &[TripRecord]) -> BTreeMap<u8, Vec<f64>> {
    durations_by_patch(&trips.iter().map(|t| (t.patch, t.drop - t.pickup)).collect::<Vec<_>>())
}

pub fn search_durations(searches: &[SearchRecord]) -> BTreeMap<u8, Vec<f64>> {
    durations_by_patch(&searches.iter().map(|s| (s.patch, s.pickup - s.start)).collect::<Vec<_>>())
}
