//! Shared test helpers: exhaustive independent-set search and small random
//! stream builders.

#![allow(dead_code)]

use winsel::{is_independent, Interval};

/// Exhaustive maximum-independent-set size; only usable for tiny inputs.
pub fn brute_force_opt(intervals: &[Interval]) -> usize {
    assert!(intervals.len() <= 20, "brute force limited to tiny inputs");
    let mut best = 0;
    for mask in 0u32..(1 << intervals.len()) {
        let subset: Vec<Interval> = intervals
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, iv)| *iv)
            .collect();
        if subset.len() > best && is_independent(&subset) {
            best = subset.len();
        }
    }
    best
}

pub fn intervals_from_coords(coords: &[(f64, f64)]) -> Vec<Interval> {
    coords
        .iter()
        .enumerate()
        .map(|(t, &(l, r))| Interval::new(l, r, t as u64).unwrap())
        .collect()
}
