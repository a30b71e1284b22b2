//! Exact sliding-window oracle: keeps the full window contents and reports
//! the true optimum. A test fixture, not a space-efficient contender.

use crate::interval::{max_independent_set, Interval, IntervalError};
use std::collections::VecDeque;

/// FIFO buffer over the `L` most recent intervals.
#[derive(Debug, Clone)]
pub struct WindowBuffer {
    capacity: usize,
    contents: VecDeque<Interval>,
    next_arrival: u64,
}

impl WindowBuffer {
    pub fn new(capacity: usize) -> Self {
        WindowBuffer {
            capacity,
            contents: VecDeque::new(),
            next_arrival: 0,
        }
    }

    pub fn push(&mut self, interval: Interval) -> Result<(), IntervalError> {
        if interval.arrival != self.next_arrival {
            return Err(IntervalError::OutOfOrder {
                got: interval.arrival,
                expected: self.next_arrival,
            });
        }
        self.contents.push_back(interval);
        if self.contents.len() > self.capacity {
            self.contents.pop_front();
        }
        self.next_arrival += 1;
        Ok(())
    }

    pub fn contents(&self) -> impl Iterator<Item = &Interval> {
        self.contents.iter()
    }

    pub fn len(&self) -> usize {
        self.contents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contents.is_empty()
    }

    /// Exact maximum independent set of the current window.
    pub fn window_opt(&self) -> Vec<Interval> {
        let items: Vec<Interval> = self.contents.iter().copied().collect();
        max_independent_set(&items)
    }
}
