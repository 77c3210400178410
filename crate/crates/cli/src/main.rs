mod bounds;
mod construct;
mod ex;
mod exit;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use exit::{CliResult, Exit};

const PATTERN_HELP: &str = "\
Patterns:
  Kl_s(a1,...,al)  complete l-partite blowup K_l^{(s)}(a1,...,al) of the complete s-graph on l vertices
  Kl_s             K_l^{(s)} itself, e.g. K3_2 is the triangle and K4_3 the complete 3-graph on 4 vertices
  file:PATH        a hypergraph in the text format

Exit codes: 0 success, 1 claim refuted, 2 usage error, 3 infeasible or timed out.";

#[derive(Parser, Debug)]
#[command(name = "hyperturan", version, about = "Cliques in hypergraphs without complete partite blowups", after_help = PATTERN_HELP)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Time budget per search, in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
    /// Cache directory for exact values (default: $HYPERTURAN_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Ignore the cache even if one is configured.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Raise the exact-search guard to the extended limit.
    #[arg(long, global = true)]
    pub augment: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl Global {
    pub fn timeout(&self) -> CliResult<Option<Duration>> {
        match self.timeout {
            None => Ok(None),
            Some(t) if t.is_finite() && t > 0.0 => Ok(Some(Duration::from_secs_f64(t))),
            Some(t) => Err(Exit::usage(format!("timeout {t} must be positive"))),
        }
    }

    pub fn cache(&self) -> Option<hyperturan::extremal::Cache> {
        if self.no_cache {
            return None;
        }
        match &self.cache {
            Some(dir) => Some(hyperturan::extremal::Cache::new(dir)),
            None => hyperturan::extremal::Cache::from_env(),
        }
    }

    pub fn exact_options(&self) -> CliResult<hyperturan::extremal::ExactOptions> {
        Ok(hyperturan::extremal::ExactOptions {
            workers: 0,
            timeout: self.timeout()?,
            extended: self.augment,
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate ex(n, T, F) over a range of n.
    Ex(ex::ExArgs),
    /// Build a lower-bound construction and its certificate.
    Construct(construct::ConstructArgs),
    /// Check a claim about a hypergraph file.
    Verify(verify::VerifyArgs),
    /// Exponents of the known upper and lower bounds.
    Bounds(bounds::BoundsArgs),
}

fn run(cli: Cli) -> CliResult<u8> {
    if cli.global.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.workers)
            .build_global()
            .map_err(|e| Exit::usage(e.to_string()))?;
    }
    match cli.command {
        Command::Ex(args) => ex::run(&cli.global, &args),
        Command::Construct(args) => construct::run(&cli.global, &args),
        Command::Verify(args) => verify::run(&cli.global, &args),
        Command::Bounds(args) => bounds::run(&cli.global, &args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
