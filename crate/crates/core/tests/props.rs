//! Property-based tests: every engine against the exact oracle or an
//! exhaustive search on randomly generated streams.

mod common;

use common::brute_force_opt;
use proptest::prelude::*;
use winsel::{
    is_independent, max_independent_set, ImprovedWindow, Interval, RegionPartition, RunStack,
    UnitWindow, WindowBuffer,
};

fn arb_stream(max_len: usize) -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((0.0f64..100.0, 0.0f64..25.0), 1..=max_len).prop_map(|pairs| {
        pairs
            .into_iter()
            .enumerate()
            .map(|(t, (l, len))| Interval::new(l, l + len, t as u64).unwrap())
            .collect()
    })
}

fn arb_unit_stream(max_len: usize) -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec(0.0f64..60.0, 1..=max_len).prop_map(|lefts| {
        lefts
            .into_iter()
            .enumerate()
            .map(|(t, l)| Interval::new(l, l + 1.0, t as u64).unwrap())
            .collect()
    })
}

proptest! {
    // The greedy optimum equals exhaustive search on small instances.
    #[test]
    fn greedy_matches_brute_force(stream in arb_stream(12)) {
        let greedy = max_independent_set(&stream);
        prop_assert!(is_independent(&greedy));
        prop_assert_eq!(greedy.len(), brute_force_opt(&stream));
    }

    // The window buffer's optimum equals brute force over the live window.
    #[test]
    fn oracle_matches_brute_force(stream in arb_stream(30), window in 1usize..10) {
        let mut buf = WindowBuffer::new(window);
        for iv in &stream {
            buf.push(*iv).unwrap();
            let live: Vec<Interval> = buf.contents().copied().collect();
            prop_assert_eq!(buf.window_opt().len(), brute_force_opt(&live));
        }
    }

    // Unit engine: solution within a factor 2 of the window optimum, slot
    // count within a factor 2 the other way, at every step.
    #[test]
    fn unit_window_sandwich(stream in arb_unit_stream(60), window in 2u64..20) {
        let mut alg = UnitWindow::new(window);
        let mut oracle = WindowBuffer::new(window as usize);
        for iv in &stream {
            alg.observe(*iv).unwrap();
            oracle.push(*iv).unwrap();
            alg.validate().map_err(TestCaseError::fail)?;
            let opt = oracle.window_opt().len();
            let sol = alg.solution();
            prop_assert!(is_independent(&sol));
            prop_assert!(opt <= 2 * sol.len());
            prop_assert!(alg.slot_count() <= 2 * opt);
        }
    }

    // Region partition: after the whole stream the solution is at least
    // (OPT+1)/2, independent, monotone in size, and small in storage.
    #[test]
    fn region_partition_guarantees(stream in arb_stream(40)) {
        let mut cp = RegionPartition::new();
        let mut prev = 0;
        for iv in &stream {
            cp.process(*iv);
            cp.validate().map_err(TestCaseError::fail)?;
            let sol = cp.solution();
            prop_assert!(is_independent(&sol));
            prop_assert!(sol.len() >= prev);
            prev = sol.len();
            prop_assert!(cp.stored().len() <= 2 * sol.len());
        }
        let opt = max_independent_set(&stream).len();
        prop_assert!(2 * cp.solution_size() > opt);
    }

    // Run stack: structural invariants hold after every arrival, and the
    // oldest run's solution is within (4 + 2b) of the window optimum with an
    // additive allowance for tiny solutions.
    #[test]
    fn run_stack_invariants(stream in arb_stream(80), window in 4u64..40) {
        let beta = 0.1;
        let mut stack = RunStack::new(window, beta);
        let mut oracle = WindowBuffer::new(window as usize);
        for iv in &stream {
            stack.observe(*iv).unwrap();
            oracle.push(*iv).unwrap();
            stack.validate().map_err(TestCaseError::fail)?;
            let out = stack.output().len();
            let opt = oracle.window_opt().len() as f64;
            prop_assert!(opt <= (4.0 + 2.0 * beta) * out as f64 + 2.0);
        }
    }

    // Improved engine: output independent, never worse than the baseline,
    // and (once the output is non-trivial) within (11/3 + d) of the window
    // optimum, with a small slack for additive boundary effects.
    #[test]
    fn improved_dominates_and_approximates(stream in arb_stream(80), window in 4u64..40) {
        let delta = 0.2;
        let mut alg = ImprovedWindow::new(window, delta / 2.0);
        let mut oracle = WindowBuffer::new(window as usize);
        for iv in &stream {
            alg.observe(*iv).unwrap();
            oracle.push(*iv).unwrap();
            alg.stack().validate().map_err(TestCaseError::fail)?;
            let out = alg.output();
            prop_assert!(is_independent(&out));
            prop_assert!(out.len() >= alg.baseline_output().len());
            if out.len() >= 6 {
                let opt = oracle.window_opt().len() as f64;
                prop_assert!(opt <= (11.0 / 3.0 + delta + 0.25) * out.len() as f64);
            }
        }
    }
}
