//! Associated runs and output assembly: the (11/3+δ)-approximate
//! sliding-window algorithm layered on the smooth-histogram stack.
//!
//! When two runs become adjacent, the predecessor's region layout is frozen
//! and the successor gets domain-restricted engines: one per predecessor
//! region ("singles") and one per consecutive region pair ("pairs"). The
//! successor's solution at that instant is classified into intervals that sit
//! inside one predecessor region (B1) and intervals that cross predecessor
//! boundaries (B2); both act as fallbacks when an associated engine stays
//! empty. The final output is the best of four candidate independent sets.

use crate::cp::{RegionPartition, RegionView};
use crate::histogram::RunStack;
use crate::interval::{Interval, IntervalError};
use std::collections::HashMap;

fn in_domain(low: f64, low_closed: bool, high: f64, high_closed: bool, iv: &Interval) -> bool {
    let left_in = iv.left > low || (iv.left == low && low_closed);
    let right_in = iv.right < high || (iv.right == high && high_closed);
    left_in && right_in
}

#[derive(Debug, Clone)]
pub struct AssociatedRunSet {
    /// Frozen predecessor regions; the domains of the singles.
    domains: Vec<RegionView>,
    singles: Vec<RegionPartition>,
    pairs: Vec<RegionPartition>,
    /// B1: region index -> first snapshot interval fully inside that region.
    b1: HashMap<usize, Interval>,
    /// B2: leftmost crossed boundary index -> (interval, number of
    /// boundaries it crosses). Boundary k separates regions k and k+1.
    b2: HashMap<usize, (Interval, usize)>,
}

impl AssociatedRunSet {
    /// Freeze the predecessor's regions and classify the successor's current
    /// solution against them.
    pub fn on_adjacency(predecessor_regions: &[RegionView], successor_solution: &[Interval]) -> Self {
        let domains = predecessor_regions.to_vec();
        let singles = domains
            .iter()
            .map(|d| RegionPartition::with_domain(d.low, d.low_closed, d.high, d.high_closed))
            .collect();
        let pairs = domains
            .windows(2)
            .map(|w| {
                RegionPartition::with_domain(w[0].low, w[0].low_closed, w[1].high, w[1].high_closed)
            })
            .collect();
        let mut set = AssociatedRunSet {
            domains,
            singles,
            pairs,
            b1: HashMap::new(),
            b2: HashMap::new(),
        };
        for iv in successor_solution {
            set.classify(iv);
        }
        set
    }

    fn classify(&mut self, iv: &Interval) {
        if let Some(k) = self
            .domains
            .iter()
            .position(|d| in_domain(d.low, d.low_closed, d.high, d.high_closed, iv))
        {
            self.b1.entry(k).or_insert(*iv);
            return;
        }
        // Crossing: record against the leftmost boundary it covers. Boundary
        // k is the point domains[k].high = domains[k+1].low.
        let crossed: Vec<usize> = (0..self.domains.len().saturating_sub(1))
            .filter(|&k| {
                let p = self.domains[k].high;
                iv.left <= p && p <= iv.right
            })
            .collect();
        if let Some(&first) = crossed.first() {
            self.b2.entry(first).or_insert((*iv, crossed.len()));
        }
    }

    /// Feed one subsequent interval to every engine whose domain fully
    /// contains it: at most one single and at most two pairs.
    pub fn feed(&mut self, interval: Interval) {
        for engine in self.singles.iter_mut().chain(self.pairs.iter_mut()) {
            engine.process(interval);
        }
    }

    pub fn region_count(&self) -> usize {
        self.domains.len()
    }

    pub fn single_count(&self) -> usize {
        self.singles.len()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn stored_count(&self) -> usize {
        self.singles
            .iter()
            .chain(self.pairs.iter())
            .map(|e| e.stored().len())
            .sum()
    }

    /// Candidate (b): per-region solutions with B1 fallbacks.
    fn singles_candidate(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for (k, engine) in self.singles.iter().enumerate() {
            let sol = engine.solution();
            if sol.is_empty() {
                if let Some(iv) = self.b1.get(&k) {
                    out.push(*iv);
                }
            } else {
                out.extend(sol);
            }
        }
        out
    }

    /// Candidates (c)/(d): merged-pair solutions over pairs of one parity,
    /// with B2 fallbacks and leftover regions served by their singles.
    fn pairs_candidate(&self, parity: usize) -> Vec<Interval> {
        let n = self.domains.len();
        let mut out = Vec::new();
        let mut covered = vec![false; n];
        let mut k = parity;
        while k + 1 < n {
            covered[k] = true;
            covered[k + 1] = true;
            let sol = self.pairs[k].solution();
            if sol.is_empty() {
                // Fallback: a snapshot interval crossing exactly this
                // boundary and nothing else, confined to the merged domain.
                if let Some(&(iv, count)) = self.b2.get(&k) {
                    let (lo, hi) = (&self.domains[k], &self.domains[k + 1]);
                    if count == 1
                        && in_domain(lo.low, lo.low_closed, hi.high, hi.high_closed, &iv)
                    {
                        out.push(iv);
                    }
                }
            } else {
                out.extend(sol);
            }
            k += 2;
        }
        for (k, engine) in self.singles.iter().enumerate() {
            if !covered[k] {
                let sol = engine.solution();
                if sol.is_empty() {
                    if let Some(iv) = self.b1.get(&k) {
                        out.push(*iv);
                    }
                } else {
                    out.extend(sol);
                }
            }
        }
        out
    }

    /// The four candidate sets, given the oldest run's own solution.
    pub fn candidates(&self, own_solution: Vec<Interval>) -> Vec<Vec<Interval>> {
        vec![
            own_solution,
            self.singles_candidate(),
            self.pairs_candidate(0),
            self.pairs_candidate(1),
        ]
    }
}

/// Largest of the oldest run's solution and the associated-run candidates.
pub fn assemble_output(
    own_solution: Vec<Interval>,
    associated: Option<&AssociatedRunSet>,
) -> Vec<Interval> {
    match associated {
        None => own_solution,
        Some(set) => set
            .candidates(own_solution)
            .into_iter()
            .max_by_key(|c| c.len())
            .unwrap_or_default(),
    }
}

/// The full sliding-window algorithm: a run stack whose adjacency events
/// create associated run sets on the successor run.
#[derive(Debug, Clone)]
pub struct ImprovedWindow {
    stack: RunStack,
}

impl ImprovedWindow {
    /// `beta` is the stack's smoothing parameter; choose beta = delta / 2 to
    /// target an (11/3 + delta)-approximation.
    pub fn new(window: u64, beta: f64) -> Self {
        ImprovedWindow {
            stack: RunStack::new(window, beta),
        }
    }

    pub fn observe(&mut self, interval: Interval) -> Result<(), IntervalError> {
        let events = self.stack.observe(interval)?;
        for ev in events {
            // A new adjacency replaces any earlier snapshot the successor
            // carried; predecessor expiry emits no event, so those sets stay.
            let (Some(pred), Some(succ)) = (
                self.stack.run_by_start(ev.pred_start),
                self.stack.run_by_start(ev.succ_start),
            ) else {
                continue;
            };
            let assoc =
                AssociatedRunSet::on_adjacency(&pred.engine.region_views(), &succ.engine.solution());
            self.stack.attach(ev.succ_start, assoc);
        }
        Ok(())
    }

    pub fn output(&self) -> Vec<Interval> {
        match self.stack.oldest() {
            None => Vec::new(),
            Some(run) => assemble_output(run.engine.solution(), run.associated.as_ref()),
        }
    }

    /// The baseline output the stack alone would report.
    pub fn baseline_output(&self) -> Vec<Interval> {
        self.stack.output()
    }

    pub fn stack(&self) -> &RunStack {
        &self.stack
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::is_independent;

    fn iv(left: f64, right: f64, arrival: u64) -> Interval {
        Interval::new(left, right, arrival).unwrap()
    }

    fn view(low: f64, lc: bool, high: f64, hc: bool) -> RegionView {
        RegionView {
            low,
            low_closed: lc,
            high,
            high_closed: hc,
            leftmost: None,
            rightmost: None,
        }
    }

    fn three_regions() -> Vec<RegionView> {
        vec![
            view(f64::NEG_INFINITY, false, 2.0, true),
            view(2.0, false, 5.0, true),
            view(5.0, false, f64::INFINITY, false),
        ]
    }

    #[test]
    fn counts_per_adjacency() {
        let set = AssociatedRunSet::on_adjacency(&three_regions(), &[]);
        assert_eq!(set.single_count(), 3);
        assert_eq!(set.pair_count(), 2);
        let virgin = AssociatedRunSet::on_adjacency(
            &[view(f64::NEG_INFINITY, false, f64::INFINITY, false)],
            &[],
        );
        assert_eq!(virgin.single_count(), 1);
        assert_eq!(virgin.pair_count(), 0);
    }

    #[test]
    fn feed_fan_out() {
        let mut set = AssociatedRunSet::on_adjacency(&three_regions(), &[]);
        // inside region 1: single #1 plus both pairs
        set.feed(iv(3.0, 4.0, 0));
        assert_eq!(set.singles[1].solution_size(), 1);
        assert_eq!(set.pairs[0].solution_size(), 1);
        assert_eq!(set.pairs[1].solution_size(), 1);
        // crossing the boundary at 2: only pair #(0,1)
        let mut set2 = AssociatedRunSet::on_adjacency(&three_regions(), &[]);
        set2.feed(iv(1.0, 3.0, 0));
        assert!(set2.singles.iter().all(|e| e.solution_size() == 0));
        assert_eq!(set2.pairs[0].solution_size(), 1);
        assert_eq!(set2.pairs[1].solution_size(), 0);
    }

    #[test]
    fn snapshot_classification() {
        let snapshot = [iv(3.0, 4.0, 0), iv(1.0, 3.0, 1), iv(1.5, 6.0, 2)];
        let set = AssociatedRunSet::on_adjacency(&three_regions(), &snapshot);
        assert_eq!(set.b1.get(&1), Some(&snapshot[0]));
        assert_eq!(set.b2.get(&0), Some(&(snapshot[1], 1)));
        // the two-boundary interval does not displace the single-crossing one
        assert_eq!(set.b2.len(), 1);
    }

    #[test]
    fn fallbacks_fill_empty_engines() {
        let snapshot = [iv(3.0, 4.0, 0)];
        let set = AssociatedRunSet::on_adjacency(&three_regions(), &snapshot);
        let cand = set.candidates(Vec::new());
        assert_eq!(cand[1], vec![snapshot[0]]); // singles candidate via B1
        let out = assemble_output(Vec::new(), Some(&set));
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn output_dominates_baseline_and_stays_independent() {
        let coords = [
            (0.0, 4.0),
            (6.0, 9.0),
            (1.0, 2.0),
            (7.0, 7.5),
            (3.0, 3.5),
            (10.0, 12.0),
            (0.5, 1.5),
            (11.0, 11.5),
            (5.0, 5.5),
            (8.0, 8.5),
        ];
        let mut alg = ImprovedWindow::new(6, 0.1);
        for (t, &(l, r)) in coords.iter().enumerate() {
            alg.observe(iv(l, r, t as u64)).unwrap();
            let out = alg.output();
            assert!(is_independent(&out));
            assert!(out.len() >= alg.baseline_output().len());
            alg.stack().validate().unwrap();
        }
    }

    #[test]
    fn no_associated_set_falls_back_to_own_solution() {
        let mut alg = ImprovedWindow::new(8, 0.1);
        alg.observe(iv(0.0, 1.0, 0)).unwrap();
        assert_eq!(alg.output(), alg.baseline_output());
    }
}
