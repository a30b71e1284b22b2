//! Sliding-window 2-approximation for unit-length intervals.
//!
//! For each integer slot r the engine keeps the latest window interval whose
//! left endpoint falls in [r, r+1). Stored intervals in slots of equal parity
//! are pairwise disjoint, which yields the 2-approximation; the reported
//! solution is the exact optimum of the (small) stored set.

use crate::interval::{max_independent_set, Interval, IntervalError};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone)]
pub struct UnitWindow {
    /// slot r -> latest stored interval with floor(left) = r
    slots: BTreeMap<i64, Interval>,
    /// arrival index -> slot, for the constant-time expiry check
    by_arrival: HashMap<u64, i64>,
    window: u64,
    t: u64,
}

impl UnitWindow {
    pub fn new(window: u64) -> Self {
        UnitWindow {
            slots: BTreeMap::new(),
            by_arrival: HashMap::new(),
            window,
            t: 0,
        }
    }

    /// Process one arriving unit interval. Overwrites its slot, then clears
    /// the slot of the interval that just left the window (if still stored).
    pub fn observe(&mut self, interval: Interval) -> Result<(), IntervalError> {
        // Unit-ness is "right is exactly the f64 sum left + 1.0": checking
        // `len() == 1.0` instead would reject streams whose subtraction
        // rounds a hair away from 1 even though right was built as left + 1.
        if interval.right != interval.left + 1.0 {
            return Err(IntervalError::NotUnit {
                left: interval.left,
                right: interval.right,
            });
        }
        if interval.arrival != self.t {
            return Err(IntervalError::OutOfOrder {
                got: interval.arrival,
                expected: self.t,
            });
        }
        let slot = interval.left.floor() as i64;
        if let Some(prev) = self.slots.insert(slot, interval) {
            self.by_arrival.remove(&prev.arrival);
        }
        self.by_arrival.insert(interval.arrival, slot);
        // Exactly one interval expires per step: the one that arrived L steps
        // ago. Clear its slot if it is still the stored occupant.
        if self.t + 1 > self.window {
            let expired = self.t + 1 - self.window - 1;
            if let Some(slot) = self.by_arrival.remove(&expired) {
                self.slots.remove(&slot);
            }
        }
        self.t += 1;
        Ok(())
    }

    /// Exact optimum of the stored intervals.
    pub fn solution(&self) -> Vec<Interval> {
        let stored: Vec<Interval> = self.slots.values().copied().collect();
        max_independent_set(&stored)
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn stored(&self) -> impl Iterator<Item = &Interval> {
        self.slots.values()
    }

    /// Structural self-check: slot keys match floors, no expired survivors.
    pub fn validate(&self) -> Result<(), String> {
        for (&slot, iv) in &self.slots {
            if iv.left.floor() as i64 != slot {
                return Err(format!("slot {} holds interval with left {}", slot, iv.left));
            }
            if self.t >= self.window && iv.arrival < self.t - self.window {
                return Err(format!("expired interval (arrival {}) survived", iv.arrival));
            }
        }
        Ok(())
    }
}
