//! `zetalab`: command-line front end for the zetalab numerical experiments.

mod commands;
mod config;
mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser};
use zetalab::{Error, Result};

use commands::Command;
use config::{Layer, RunConfig, ENV_CONFIG};

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Prolate spectral triples, Weil positivity and zeta-zero criteria")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand. Flags override `ZETALAB_*`
/// environment variables, which override the TOML file given by --config.
#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML configuration file (also ZETALAB_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Basis truncation N (indices |n| ≤ N).
    #[arg(long = "trunc-n", global = true)]
    trunc_n: Option<usize>,
    /// Gauss–Legendre nodes per panel.
    #[arg(long = "quad-order", global = true)]
    quad_order: Option<usize>,
    /// Scalar type: f64 or mp.
    #[arg(long, global = true)]
    float: Option<String>,
    /// Parameter μ = λ².
    #[arg(long, global = true)]
    mu: Option<String>,
    /// μ grid as a:b:step.
    #[arg(long = "mu-range", global = true)]
    mu_range: Option<String>,
    /// Prolate cut k: an even integer or "auto".
    #[arg(long, global = true)]
    k: Option<String>,
    /// Weil form terms, e.g. full, arch-only, exclude=newest.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Zeta zeros, one ordinate per line.
    #[arg(long = "zeros-file", global = true)]
    zeros_file: Option<PathBuf>,
    /// Output directory (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for grid commands.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

impl CommonArgs {
    fn layer(&self) -> Layer {
        Layer {
            digits: self.digits,
            trunc_n: self.trunc_n,
            quad_order: self.quad_order,
            float: self.float.clone(),
            mu: self.mu.clone(),
            mu_range: self.mu_range.clone(),
            k: self.k.clone(),
            mode: self.mode.clone(),
            zeros_file: self.zeros_file.clone(),
            out: self.out.clone(),
            workers: self.workers,
        }
    }
}

fn env_var(name: &str) -> Option<String> {
    std::env::var(name).ok().filter(|v| !v.is_empty())
}

fn run(cli: Cli) -> Result<()> {
    let file = match cli.common.config.clone().or_else(|| env_var(ENV_CONFIG).map(PathBuf::from)) {
        Some(path) => Layer::load(&path)?,
        None => Layer::default(),
    };
    let layer = file.overlay(Layer::from_env(env_var)?).overlay(cli.common.layer());
    let mut cfg = RunConfig::resolve(cli.command.name(), layer, cli.command.defaults()?)?;
    cfg.extra = cli.command.settings();
    cli.command.adjust(&mut cfg)?;
    if let Some(w) = cfg.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
    }
    let ctx = cfg.context();
    let _g = ctx.install();
    let artifacts = cli.command.execute(&cfg, &ctx)?;
    output::emit(&artifacts, &cfg, &mut std::io::stdout().lock())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zetalab: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
