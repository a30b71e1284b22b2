//! Smooth-histogram stack of region-partition runs: the (4+2β)-approximate
//! sliding-window baseline.
//!
//! Every arrival starts a fresh run; a clean-up pass keeps only runs whose
//! solution sizes decay geometrically, so the stack stays logarithmic in the
//! window length. The reported solution is the oldest surviving run's.

use crate::cp::RegionPartition;
use crate::improved::AssociatedRunSet;
use crate::interval::{Interval, IntervalError};
use std::collections::HashSet;

/// A pair of runs (identified by start index) that became adjacent this step,
/// either through clean-up deletions or because a new run was created.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacencyEvent {
    pub pred_start: u64,
    pub succ_start: u64,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub start: u64,
    pub engine: RegionPartition,
    pub associated: Option<AssociatedRunSet>,
}

#[derive(Debug, Clone)]
pub struct RunStack {
    runs: Vec<Run>,
    window: u64,
    beta: f64,
    t: u64,
    /// Adjacent pairs whose smoothness condition was verified when the
    /// adjacency was created. Checked by `validate`: the live condition can
    /// drift as run solutions grow, but the frozen one must always exist.
    frozen_pairs: HashSet<(u64, u64)>,
}

impl RunStack {
    pub fn new(window: u64, beta: f64) -> Self {
        RunStack {
            runs: Vec::new(),
            window,
            beta,
            t: 0,
            frozen_pairs: HashSet::new(),
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn steps(&self) -> u64 {
        self.t
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn oldest(&self) -> Option<&Run> {
        self.runs.first()
    }

    fn adjacent_pairs(&self) -> Vec<(u64, u64)> {
        self.runs
            .windows(2)
            .map(|w| (w[0].start, w[1].start))
            .collect()
    }

    fn sizes(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.engine.solution_size()).collect()
    }

    /// Process one arrival: feed attached associated runs, feed every live
    /// run, start a new run, expire, clean up. Returns the adjacency events
    /// of this step.
    pub fn observe(&mut self, interval: Interval) -> Result<Vec<AdjacencyEvent>, IntervalError> {
        if interval.arrival != self.t {
            return Err(IntervalError::OutOfOrder {
                got: interval.arrival,
                expected: self.t,
            });
        }
        // Associated runs only consider intervals arriving after their
        // creation, so they are fed before any set created this step exists.
        for run in &mut self.runs {
            if let Some(assoc) = &mut run.associated {
                assoc.feed(interval);
            }
        }
        let before: HashSet<(u64, u64)> = self.adjacent_pairs().into_iter().collect();
        for run in &mut self.runs {
            run.engine.process(interval);
        }
        let mut fresh = Run {
            start: self.t,
            engine: RegionPartition::new(),
            associated: None,
        };
        fresh.engine.process(interval);
        self.runs.push(fresh);
        self.t += 1;
        // A run is expired once its start precedes the current window.
        let horizon = self.t.saturating_sub(self.window);
        let live_from = self.runs.iter().take_while(|r| r.start < horizon).count();
        debug_assert!(live_from <= 1, "more than one run expired in a single step");
        self.runs.drain(..live_from);
        self.cleanup();
        let mut events = Vec::new();
        for pair in self.adjacent_pairs() {
            if !before.contains(&pair) {
                events.push(AdjacencyEvent {
                    pred_start: pair.0,
                    succ_start: pair.1,
                });
                self.freeze_pair(pair);
            }
        }
        self.frozen_pairs
            .retain(|&(p, _)| self.runs.first().is_some_and(|r| p >= r.start));
        Ok(events)
    }

    /// For each run, find the maximal newer run whose solution is within a
    /// (1+β) factor and delete everything strictly between them.
    fn cleanup(&mut self) {
        // Solution sizes cannot change during clean-up (nothing is fed), so
        // compute them once up front.
        let mut sizes = self.sizes();
        let mut i = 0;
        while i + 1 < self.runs.len() {
            let si = sizes[i] as f64;
            let mut jmax = None;
            for (j, &sj) in sizes.iter().enumerate().skip(i + 1) {
                if si <= (1.0 + self.beta) * sj as f64 {
                    jmax = Some(j);
                }
            }
            if let Some(j) = jmax {
                if j > i + 1 {
                    self.runs.drain(i + 1..j);
                    sizes.drain(i + 1..j);
                }
            }
            i += 1;
        }
    }

    fn freeze_pair(&mut self, pair: (u64, u64)) {
        let pred = self.runs.iter().find(|r| r.start == pair.0);
        let succ = self.runs.iter().find(|r| r.start == pair.1);
        if let (Some(p), Some(s)) = (pred, succ) {
            let ratio_ok = p.engine.solution_size() as f64
                <= (1.0 + self.beta) * s.engine.solution_size() as f64;
            debug_assert!(
                ratio_ok || pair.1 == pair.0 + 1,
                "smoothness violated at adjacency creation"
            );
        }
        self.frozen_pairs.insert(pair);
    }

    /// Solution of the oldest run (empty before the first arrival).
    pub fn output(&self) -> Vec<Interval> {
        self.runs
            .first()
            .map(|r| r.engine.solution())
            .unwrap_or_default()
    }

    pub fn attach(&mut self, succ_start: u64, assoc: AssociatedRunSet) {
        if let Some(run) = self.runs.iter_mut().find(|r| r.start == succ_start) {
            run.associated = Some(assoc);
        }
    }

    pub fn run_by_start(&self, start: u64) -> Option<&Run> {
        self.runs.iter().find(|r| r.start == start)
    }

    /// Total intervals held by the main engines and all associated engines.
    pub fn stored_count(&self) -> usize {
        self.runs
            .iter()
            .map(|r| {
                r.engine.stored().len()
                    + r.associated.as_ref().map_or(0, |a| a.stored_count())
            })
            .sum()
    }

    /// Structural self-check: geometric decay across one gap, a frozen
    /// smoothness record for every adjacent pair, the logarithmic run-count
    /// bound, strictly increasing starts, and no expired state.
    pub fn validate(&self) -> Result<(), String> {
        let sizes = self.sizes();
        for i in 0..sizes.len().saturating_sub(2) {
            if (sizes[i] as f64) < (1.0 + self.beta) * sizes[i + 2] as f64 {
                return Err(format!(
                    "decay violated at run {}: sizes {} vs {}",
                    i,
                    sizes[i],
                    sizes[i + 2]
                ));
            }
        }
        for pair in self.adjacent_pairs() {
            if !self.frozen_pairs.contains(&pair) {
                return Err(format!("adjacent pair {:?} has no frozen record", pair));
            }
        }
        let bound = 2.0 * (self.window as f64).log(1.0 + self.beta).ceil() + 4.0;
        if self.runs.len() as f64 > bound {
            return Err(format!("{} runs exceed the bound {}", self.runs.len(), bound));
        }
        for w in self.runs.windows(2) {
            if w[0].start >= w[1].start {
                return Err("run starts are not strictly increasing".into());
            }
        }
        let horizon = self.t.saturating_sub(self.window);
        if self.runs.first().is_some_and(|r| r.start < horizon) {
            return Err("expired run survived".into());
        }
        Ok(())
    }
}
