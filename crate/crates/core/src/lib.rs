//! Interval selection in sliding windows: streaming approximation engines,
//! an exact oracle, adversarial stream generators, and a benchmark harness.
//!
//! The stream is a sequence of closed intervals on the real line; at any
//! moment only the `L` most recent are alive, and the goal is a large set of
//! pairwise-disjoint alive intervals. The engines trade exactness for space:
//!
//! - [`unit_window::UnitWindow`] — 2-approximation for unit-length intervals;
//! - [`cp::RegionPartition`] — streaming (non-windowed) 2-approximation for
//!   arbitrary lengths;
//! - [`histogram::RunStack`] — (4+2β)-approximate sliding window baseline;
//! - [`improved::ImprovedWindow`] — (11/3+δ)-approximate sliding window
//!   algorithm with associated runs;
//! - [`oracle::WindowBuffer`] — exact but Θ(L)-space reference.

pub mod cp;
pub mod gadgets;
pub mod harness;
pub mod histogram;
pub mod improved;
pub mod interval;
pub mod oracle;
pub mod unit_window;

pub use cp::{RegionPartition, RegionView};
pub use gadgets::{
    gen_appendix_hard, gen_chain3, gen_random_arbitrary, gen_random_unit, gen_unit_index,
    parse_spec, GadgetError,
};
pub use harness::{
    parse_stream_file, resolve_stream, run, Algorithm, HarnessConfig, HarnessError,
    MetricsRecord, OutputFormat, Summary,
};
pub use histogram::{AdjacencyEvent, Run, RunStack};
pub use improved::{assemble_output, AssociatedRunSet, ImprovedWindow};
pub use interval::{intersects, is_independent, max_independent_set, Interval, IntervalError};
pub use oracle::WindowBuffer;
pub use unit_window::UnitWindow;
