use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use winsel::harness::{self, Algorithm, HarnessConfig, HarnessError, OutputFormat};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgArg {
    Unit,
    Cp,
    Smooth,
    Improved,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

/// Sliding-window interval selection benchmark driver.
#[derive(Debug, Parser)]
#[command(name = "winsel", version)]
struct Cli {
    /// Algorithm to run.
    #[arg(long, value_enum)]
    alg: AlgArg,

    /// Sliding window length L.
    #[arg(long)]
    window: u64,

    /// Smoothing parameter for the run stack.
    #[arg(long, default_value_t = 0.1)]
    beta: f64,

    /// Target slack for the improved algorithm (uses beta = delta / 2).
    #[arg(long, default_value_t = 0.2)]
    delta: f64,

    /// Stream source: a file of `left right` lines, or a generator spec such
    /// as `appendix_hard:l=30` or `random_unit:n=1000,range=0..100,seed=7`.
    #[arg(long)]
    stream: String,

    /// Also run the exact oracle and report per-step ratios.
    #[arg(long)]
    oracle: bool,

    /// Emit a metrics record every N steps.
    #[arg(long, default_value_t = 1)]
    sample_every: u64,

    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("winsel: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn real_main(cli: Cli) -> Result<(), HarnessError> {
    let mut oracle = cli.oracle;
    if oracle && cli.window > harness::ORACLE_WINDOW_LIMIT {
        eprintln!(
            "winsel: warning: oracle disabled for window {} > {} (it stores the whole window)",
            cli.window,
            harness::ORACLE_WINDOW_LIMIT
        );
        oracle = false;
    }
    let config = HarnessConfig {
        algorithm: match cli.alg {
            AlgArg::Unit => Algorithm::Unit,
            AlgArg::Cp => Algorithm::Cp,
            AlgArg::Smooth => Algorithm::Smooth,
            AlgArg::Improved => Algorithm::Improved,
            AlgArg::Oracle => Algorithm::Oracle,
        },
        window: cli.window,
        beta: cli.beta,
        delta: cli.delta,
        oracle,
        sample_every: cli.sample_every,
        format: match cli.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Jsonl => OutputFormat::Jsonl,
        },
    };
    config.validate()?;
    let stream = harness::resolve_stream(&cli.stream)?;
    match &cli.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| {
                HarnessError::Stream(format!("cannot create {}: {e}", path.display()))
            })?;
            let mut writer = std::io::BufWriter::new(file);
            harness::run(&config, &stream, &mut writer)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            harness::run(&config, &stream, &mut lock)?;
        }
    }
    Ok(())
}
