use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coarse_cli::run::{input_failure, DEFAULT_BUDGET};
use coarse_cli::{run_text, Options};
use coarse_core::coarse::DEFAULT_DEPTH;

/// Exact large-scale geometry checks driven by JSON scenarios.
#[derive(Parser)]
#[command(name = "coarse", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file (`-` reads standard input). The report goes to
    /// standard output, a one-line summary to standard error.
    Run {
        scenario: PathBuf,
        /// Comma-separated window radii, e.g. `25,50,100`.
        #[arg(long)]
        probe_radii: Option<String>,
        /// Comma-separated scales, e.g. `1,2,4`.
        #[arg(long)]
        probe_scales: Option<String>,
        #[arg(long)]
        stability: Option<usize>,
        /// Longest entourage composite tried by `alike-via`.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Node budget for cover searches.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include every cover member in certificates.
        #[arg(long)]
        emit_cover: bool,
        /// Seed for sampled axiom checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let Cmd::Run { scenario, probe_radii, probe_scales, stability, depth, budget, emit_cover, seed } =
        Cli::parse().command;
    let opts = Options { probe_radii, probe_scales, stability, depth, budget, emit_cover, seed };
    let text = if scenario.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&scenario)
    };
    let outcome = match text {
        Ok(t) => run_text(&t, &opts),
        Err(e) => input_failure("scenario", &format!("cannot read {}: {e}", scenario.display()), &opts),
    };
    print!("{}", outcome.text());
    eprintln!("{}", outcome.summary());
    ExitCode::from(outcome.exit.code() as u8)
}
