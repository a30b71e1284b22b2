//! Benchmark harness: drive one algorithm over a stream alongside the exact
//! oracle and emit per-step metrics as CSV or JSON lines.

use crate::cp::RegionPartition;
use crate::gadgets::{parse_spec, GadgetError};
use crate::improved::ImprovedWindow;
use crate::histogram::RunStack;
use crate::interval::{Interval, IntervalError};
use crate::oracle::WindowBuffer;
use crate::unit_window::UnitWindow;
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

/// Window length above which the oracle is refused by default: it keeps the
/// whole window in memory and recomputes the optimum from scratch.
pub const ORACLE_WINDOW_LIMIT: u64 = 10_000;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("stream error: {0}")]
    Stream(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl HarnessError {
    /// Process exit code for this error class (0 is success).
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Stream(_) => 3,
            HarnessError::Invariant(_) => 4,
        }
    }
}

impl From<GadgetError> for HarnessError {
    fn from(e: GadgetError) -> Self {
        HarnessError::Stream(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Unit,
    Cp,
    Smooth,
    Improved,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub algorithm: Algorithm,
    pub window: u64,
    pub beta: f64,
    pub delta: f64,
    pub oracle: bool,
    pub sample_every: u64,
    pub format: OutputFormat,
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.window < 2 {
            return Err(HarnessError::Config(format!(
                "window must be at least 2, got {}",
                self.window
            )));
        }
        if !self.beta.is_finite() || self.beta <= 0.0 {
            return Err(HarnessError::Config(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if !self.delta.is_finite() || self.delta <= 0.0 {
            return Err(HarnessError::Config(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if self.sample_every == 0 {
            return Err(HarnessError::Config("sample-every must be positive".into()));
        }
        Ok(())
    }

    /// Smoothing parameter actually used: the improved algorithm derives it
    /// from delta, everything else takes beta as given.
    pub fn effective_beta(&self) -> f64 {
        match self.algorithm {
            Algorithm::Improved => self.delta / 2.0,
            _ => self.beta,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricsRecord {
    pub step: u64,
    pub alg_size: usize,
    pub opt_size: Option<usize>,
    pub ratio: Option<f64>,
    pub stored_intervals: usize,
    pub run_count: usize,
}

impl MetricsRecord {
    fn csv_row(&self) -> String {
        let opt = self.opt_size.map(|v| v.to_string()).unwrap_or_default();
        let ratio = self.ratio.map(|v| format!("{v:.6}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.step, self.alg_size, opt, ratio, self.stored_intervals, self.run_count
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub steps: u64,
    pub max_ratio: Option<f64>,
    pub max_stored: usize,
}

enum Engine {
    Unit(UnitWindow),
    Cp(RegionPartition),
    Smooth(RunStack),
    Improved(ImprovedWindow),
    Oracle(WindowBuffer),
}

impl Engine {
    fn new(config: &HarnessConfig) -> Self {
        let beta = config.effective_beta();
        match config.algorithm {
            Algorithm::Unit => Engine::Unit(UnitWindow::new(config.window)),
            Algorithm::Cp => Engine::Cp(RegionPartition::new()),
            Algorithm::Smooth => Engine::Smooth(RunStack::new(config.window, beta)),
            Algorithm::Improved => Engine::Improved(ImprovedWindow::new(config.window, beta)),
            Algorithm::Oracle => Engine::Oracle(WindowBuffer::new(config.window as usize)),
        }
    }

    fn observe(&mut self, interval: Interval) -> Result<(), HarnessError> {
        let result: Result<(), IntervalError> = match self {
            Engine::Unit(e) => e.observe(interval),
            Engine::Cp(e) => {
                e.process(interval);
                Ok(())
            }
            Engine::Smooth(e) => e.observe(interval).map(|_| ()),
            Engine::Improved(e) => e.observe(interval),
            Engine::Oracle(e) => e.push(interval),
        };
        result.map_err(|e| match e {
            IntervalError::NotUnit { .. } => HarnessError::Stream(e.to_string()),
            other => HarnessError::Invariant(other.to_string()),
        })
    }

    fn solution_size(&self) -> usize {
        match self {
            Engine::Unit(e) => e.solution().len(),
            Engine::Cp(e) => e.solution_size(),
            Engine::Smooth(e) => e.output().len(),
            Engine::Improved(e) => e.output().len(),
            Engine::Oracle(e) => e.window_opt().len(),
        }
    }

    fn stored_count(&self) -> usize {
        match self {
            Engine::Unit(e) => e.slot_count(),
            Engine::Cp(e) => e.stored().len(),
            Engine::Smooth(e) => e.stored_count(),
            Engine::Improved(e) => e.stack().stored_count(),
            Engine::Oracle(e) => e.len(),
        }
    }

    fn run_count(&self) -> usize {
        match self {
            Engine::Smooth(e) => e.run_count(),
            Engine::Improved(e) => e.stack().run_count(),
            _ => 1,
        }
    }

    fn validate(&self) -> Result<(), String> {
        match self {
            Engine::Unit(e) => e.validate(),
            Engine::Cp(e) => e.validate(),
            Engine::Smooth(e) => e.validate(),
            Engine::Improved(e) => e.stack().validate(),
            Engine::Oracle(_) => Ok(()),
        }
    }
}

/// Stream the intervals through the configured algorithm, writing sampled
/// metrics and a trailing summary to `out`.
pub fn run(
    config: &HarnessConfig,
    stream: &[Interval],
    out: &mut dyn Write,
) -> Result<Summary, HarnessError> {
    config.validate()?;
    let io = |e: std::io::Error| HarnessError::Stream(format!("output write failed: {e}"));
    let mut engine = Engine::new(config);
    let mut oracle = config.oracle.then(|| WindowBuffer::new(config.window as usize));
    if config.format == OutputFormat::Csv {
        writeln!(out, "step,alg_size,opt_size,ratio,stored_intervals,run_count").map_err(io)?;
    }
    let mut summary = Summary {
        steps: 0,
        max_ratio: None,
        max_stored: 0,
    };
    for (t, interval) in stream.iter().enumerate() {
        engine.observe(*interval)?;
        if let Some(buf) = oracle.as_mut() {
            buf.push(*interval)
                .map_err(|e| HarnessError::Stream(e.to_string()))?;
        }
        summary.steps = t as u64 + 1;
        if !summary.steps.is_multiple_of(config.sample_every) {
            continue;
        }
        engine.validate().map_err(HarnessError::Invariant)?;
        let alg_size = engine.solution_size();
        let opt_size = oracle.as_ref().map(|b| b.window_opt().len());
        let ratio = match (opt_size, alg_size) {
            (Some(opt), alg) if alg > 0 => Some(opt as f64 / alg as f64),
            _ => None,
        };
        if let Some(r) = ratio {
            summary.max_ratio = Some(summary.max_ratio.map_or(r, |m: f64| m.max(r)));
        }
        let record = MetricsRecord {
            step: summary.steps,
            alg_size,
            opt_size,
            ratio,
            stored_intervals: engine.stored_count(),
            run_count: engine.run_count(),
        };
        summary.max_stored = summary.max_stored.max(record.stored_intervals);
        match config.format {
            OutputFormat::Csv => writeln!(out, "{}", record.csv_row()).map_err(io)?,
            OutputFormat::Jsonl => {
                let line = serde_json::to_string(&record)
                    .map_err(|e| HarnessError::Stream(e.to_string()))?;
                writeln!(out, "{line}").map_err(io)?;
            }
        }
    }
    match config.format {
        OutputFormat::Csv => {
            let ratio = summary
                .max_ratio
                .map(|r| format!("{r:.6}"))
                .unwrap_or_else(|| "na".into());
            writeln!(
                out,
                "# summary steps={} max_ratio={} max_stored={}",
                summary.steps, ratio, summary.max_stored
            )
            .map_err(io)?;
        }
        OutputFormat::Jsonl => {
            let line = serde_json::json!({ "summary": &summary });
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    Ok(summary)
}

/// Parse a stream file: one `left<whitespace>right` pair per line, `#` lines
/// and blank lines ignored, arrivals assigned in file order.
pub fn parse_stream_file(path: &Path) -> Result<Vec<Interval>, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Stream(format!("cannot read {}: {e}", path.display())))?;
    parse_stream_text(&text)
}

pub fn parse_stream_text(text: &str) -> Result<Vec<Interval>, HarnessError> {
    let mut intervals = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: String| HarnessError::Stream(format!("line {}: {what}", lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(l), Some(r), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `left right`, got {line:?}")));
        };
        let left: f64 = l.parse().map_err(|e| bad(format!("bad left {l:?}: {e}")))?;
        let right: f64 = r.parse().map_err(|e| bad(format!("bad right {r:?}: {e}")))?;
        let iv = Interval::new(left, right, intervals.len() as u64)
            .map_err(|e| bad(e.to_string()))?;
        intervals.push(iv);
    }
    Ok(intervals)
}

/// Resolve `--stream`: an existing file path is parsed as a stream file,
/// anything else is treated as a generator spec.
pub fn resolve_stream(source: &str) -> Result<Vec<Interval>, HarnessError> {
    let path = Path::new(source);
    if path.exists() {
        parse_stream_file(path)
    } else {
        Ok(parse_spec(source)?)
    }
}
