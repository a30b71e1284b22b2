//! Closed intervals on the real line and the exact maximum-independent-set
//! routine shared by every algorithm and every test oracle.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum IntervalError {
    #[error("interval endpoints must satisfy left <= right, got [{left}, {right}]")]
    Inverted { left: f64, right: f64 },
    #[error("interval endpoints must be finite, got [{left}, {right}]")]
    NonFinite { left: f64, right: f64 },
    #[error("expected a unit-length interval, got [{left}, {right}]")]
    NotUnit { left: f64, right: f64 },
    #[error("arrival index {got} out of order, expected {expected}")]
    OutOfOrder { got: u64, expected: u64 },
}

/// A closed interval `[left, right]` tagged with its 0-based position in the
/// stream. Coordinates are compared exactly as stored; endpoints that merely
/// touch count as intersecting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
    pub arrival: u64,
}

impl Interval {
    pub fn new(left: f64, right: f64, arrival: u64) -> Result<Self, IntervalError> {
        if !left.is_finite() || !right.is_finite() {
            return Err(IntervalError::NonFinite { left, right });
        }
        if left > right {
            return Err(IntervalError::Inverted { left, right });
        }
        Ok(Interval { left, right, arrival })
    }

    /// Length of the interval. Note that for unit streams built as
    /// `[left, left + 1.0]` this subtraction can round a hair away from 1.
    pub fn len(&self) -> f64 {
        self.right - self.left
    }
}

/// Closed-interval intersection test: true iff the intervals share at least
/// one point (touching endpoints intersect).
pub fn intersects(a: &Interval, b: &Interval) -> bool {
    a.left.max(b.left) <= a.right.min(b.right)
}

/// True iff no two distinct members of the set intersect.
pub fn is_independent(set: &[Interval]) -> bool {
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            if intersects(a, b) {
                return false;
            }
        }
    }
    true
}

/// Exact maximum independent set via the earliest-right-endpoint greedy,
/// which is optimal on interval graphs. Determinized by sorting on
/// (right, left, arrival).
pub fn max_independent_set(set: &[Interval]) -> Vec<Interval> {
    let mut sorted: Vec<Interval> = set.to_vec();
    sorted.sort_by(|a, b| {
        a.right
            .total_cmp(&b.right)
            .then(a.left.total_cmp(&b.left))
            .then(a.arrival.cmp(&b.arrival))
    });
    let mut chosen: Vec<Interval> = Vec::new();
    let mut frontier = f64::NEG_INFINITY;
    for iv in sorted {
        if chosen.is_empty() || iv.left > frontier {
            frontier = iv.right;
            chosen.push(iv);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(left: f64, right: f64, arrival: u64) -> Interval {
        Interval::new(left, right, arrival).unwrap()
    }

    #[test]
    fn touching_endpoints_intersect() {
        assert!(intersects(&iv(0.0, 1.0, 0), &iv(1.0, 2.0, 1)));
        assert!(!intersects(&iv(0.0, 1.0, 0), &iv(1.1, 2.0, 1)));
        assert!(intersects(&iv(0.0, 10.0, 0), &iv(2.0, 3.0, 1)));
    }

    #[test]
    fn intersects_is_symmetric() {
        let a = iv(0.0, 1.5, 0);
        let b = iv(1.5, 3.0, 1);
        let c = iv(4.0, 5.0, 2);
        assert_eq!(intersects(&a, &b), intersects(&b, &a));
        assert_eq!(intersects(&a, &c), intersects(&c, &a));
    }

    #[test]
    fn independence() {
        assert!(is_independent(&[]));
        assert!(is_independent(&[iv(0.0, 1.0, 0), iv(2.0, 3.0, 1)]));
        assert!(!is_independent(&[iv(0.0, 1.0, 0), iv(0.5, 1.5, 1)]));
    }

    #[test]
    fn greedy_small_cases() {
        assert!(max_independent_set(&[]).is_empty());
        let set = [iv(0.0, 1.0, 0), iv(0.5, 1.5, 1), iv(2.0, 3.0, 2)];
        let opt = max_independent_set(&set);
        assert_eq!(opt.len(), 2);
        assert!(is_independent(&opt));
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(Interval::new(1.0, 0.0, 0).is_err());
        assert!(Interval::new(f64::NAN, 0.0, 0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY, 0).is_err());
    }
}
