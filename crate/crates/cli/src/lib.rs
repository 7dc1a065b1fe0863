#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Library side of the `zgeom` binary: argument types, configuration, CSV and SVG output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod render;
pub mod svg;

use args::{Cli, Command};
use config::Config;
use error::{CliError, CliResult};

pub const THREADS_ENV: &str = "ZGEOM_THREADS";

fn thread_count(cli: &Cli, cfg: &Config) -> CliResult<Option<usize>> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        return v.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))
        });
    }
    Ok(cfg.threads)
}

pub fn run(cli: Cli) -> CliResult<()> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(n) = thread_count(&cli, &cfg)? {
        if n == 0 {
            return Err(CliError::Usage("thread count must be ≥ 1".into()));
        }
        // a second initialisation in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match &cli.command {
        Command::Eval(a) => commands::eval(a, &cfg),
        Command::Scan(a) => commands::scan(a, &cfg),
        Command::Gram(a) => commands::gram(a),
        Command::Render(a) => render::render(a, &cfg),
        Command::Landau(a) => commands::landau(a, &cfg),
        Command::Surface(a) => commands::surface(a, &cfg),
        Command::Hurwitz(a) => commands::hurwitz_cmd(a),
        Command::Lfunction(a) => commands::lfunction(a),
        Command::Ingest(a) => commands::ingest(a),
    }
}
