//! `bimult`: batch runner for multiplier experiments.
//!
//! Exit codes: 0 success, 2 configuration error, 3 a check failed,
//! 4 runtime error. `BIMULT_THREADS` caps the worker pool.

mod ops;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bimult::config::{ExperimentConfig, OPERATIONS};
use bimult::symbols::CATALOGUE;
use bimult::Error;
use clap::{Parser, Subcommand};

use report::Report;

#[derive(Parser)]
#[command(name = "bimult", version, about = "Bilinear Fourier multiplier laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the operation named in a config file.
    Run { config: PathBuf },
    /// Time the fast and direct line-operator paths.
    Bench { config: PathBuf },
    /// List symbol ids usable in `symbol = ...`.
    ListSymbols,
    /// List operation names usable in `op = ...`.
    ListChecks,
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Runtime(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut root = &e;
        while let Error::Trial { source, .. } = root {
            root = source;
        }
        match root {
            Error::Config(_) | Error::Domain(_) => Self::Config(e.to_string()),
            _ => Self::Runtime(e.to_string()),
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BIMULT_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Config(format!("BIMULT_THREADS: expected a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(format!("thread pool: {e}")))
}

fn load(path: &Path) -> Result<ExperimentConfig, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    Ok(ExperimentConfig::parse(&text)?)
}

fn emit(report: &Report, cfg: &ExperimentConfig) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Runtime(format!("writing report: {e}"));
    match &cfg.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Runtime(format!("output.path {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            report.write(cfg.format, &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => report.write(cfg.format, io::stdout().lock()).map_err(io_err),
    }
}

fn execute(config: &Path, bench: bool) -> Result<u8, Failure> {
    init_threads()?;
    let cfg = load(config)?;
    let report = if bench { ops::bench(&cfg)? } else { ops::run(&cfg)? };
    emit(&report, &cfg)?;
    if report.checks.is_empty() {
        eprintln!("{}: done", cfg.op);
        return Ok(0);
    }
    eprintln!("{}: {} records, {} failed", cfg.op, report.record_count(), report.failure_count());
    Ok(if report.passed() { 0 } else { 3 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config } => execute(&config, false),
        Command::Bench { config } => execute(&config, true),
        Command::ListSymbols => {
            for (id, description) in CATALOGUE {
                println!("{id:<24}{description}");
            }
            Ok(0)
        }
        Command::ListChecks => {
            for (name, needs_symbol, description) in OPERATIONS {
                let tag = if *needs_symbol { "symbol" } else { "" };
                println!("{name:<22}{tag:<8}{description}");
            }
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (Failure::Config(msg) | Failure::Runtime(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
