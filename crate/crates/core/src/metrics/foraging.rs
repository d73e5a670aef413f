use std::collections::BTreeMap;

use super::stats::{summarize, Summary};
use crate::ants::{SearchRecord, TripRecord};

/// Colony food after each tick `0..=steps`, rebuilt from trip drop ticks.
pub fn food_timeseries(trips: &[TripRecord], steps: u64) -> Vec<u64> {
    let mut per_tick = vec![0u64; steps as usize + 1];
    for t in trips.iter().filter(|t| t.drop <= steps) {
        per_tick[t.drop as usize] += 1;
    }
    per_tick
        .iter()
        .scan(0, |acc, &d| {
            *acc += d;
            Some(*acc)
        })
        .collect()
}

fn by_patch<T>(items: &[T], patch: impl Fn(&T) -> u8, steps: impl Fn(&T) -> u64) -> BTreeMap<u8, Summary> {
    let mut groups: BTreeMap<u8, Vec<f64>> = BTreeMap::new();
    for it in items {
        groups.entry(patch(it)).or_default().push(steps(it) as f64);
    }
    groups.into_iter().filter_map(|(p, v)| summarize(&v).map(|s| (p, s))).collect()
}

/// Return-trip length (`drop - pickup`) per food patch.
pub fn trip_statistics(trips: &[TripRecord]) -> BTreeMap<u8, Summary> {
    by_patch(trips, |t| t.patch, |t| t.drop - t.pickup)
}

/// Search length (`pickup - start`) per food patch.
pub fn search_statistics(searches: &[SearchRecord]) -> BTreeMap<u8, Summary> {
    by_patch(searches, |s| s.patch, |s| s.pickup - s.start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trip(patch: u8, pickup: u64, drop: u64) -> TripRecord {
        TripRecord { agent: 0, patch, pickup, drop }
    }

    #[test]
    fn staircase() {
        let t = [trip(1, 1, 2), trip(1, 2, 4), trip(2, 3, 6)];
        assert_eq!(food_timeseries(&t, 6), [0, 0, 1, 1, 2, 2, 3]);
        assert_eq!(food_timeseries(&[], 3), [0; 4]);
    }

    #[test]
    fn single_trip() {
        let s = trip_statistics(&[trip(1, 10, 33)]);
        assert_eq!((s[&1].mean, s[&1].std), (23.0, 0.0));
    }

    #[test]
    fn zero_length_search() {
        let s = search_statistics(&[SearchRecord { agent: 0, patch: 3, start: 5, pickup: 5 }]);
        assert_eq!(s[&3].max, 0.0);
    }
}
