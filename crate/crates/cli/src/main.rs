//! `icobr`: verification runs and parameter sweeps for the interference
//! channel with an out-of-band relay.
//!
//! Exit status: 0 when every asserted property holds, 1 when one fails,
//! 2 on usage, config or I/O errors.

mod config;
mod error;
mod grid;
mod modes;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{Args, SweepConfig, CONFIG_ENV};
use error::CliError;

fn run(args: Args) -> Result<bool, CliError> {
    let cfg = SweepConfig::resolve(args, std::env::var_os(CONFIG_ENV).map(PathBuf::from))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(format!("worker pool: {e}")))?;
    let out = pool.install(|| modes::run(&cfg))?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &out.body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => std::io::stdout()
            .write_all(out.body.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?,
    }
    eprintln!(
        "{}: {} [{}]",
        cfg.mode.name(),
        out.summary,
        if out.passed { "PASS" } else { "FAIL" }
    );
    Ok(out.passed)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("icobr: {e}");
            ExitCode::from(2)
        }
    }
}
