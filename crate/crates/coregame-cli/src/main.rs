//! `coregame`: decide core non-emptiness, extract and verify members, and
//! compute approximate-core parameters for games induced by parametric
//! optimization programs.
//!
//! Exit codes: 0 success; 1 usage or malformed input; 2 solver status
//! (infeasible or unbounded programs, infeasible sub-programs, empty-core
//! extraction, size caps); 3 model assumption violations; 4 oracle
//! disagreement under `oracle --compare`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coregame::error::Error;
use coregame_cli::commands;

#[derive(Parser)]
#[command(name = "coregame", version, about = "Exact core analysis for optimization games")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide core non-emptiness for an instance file.
    Analyze {
        path: PathBuf,
        /// Also print the anchor/upper/original/lower value chain.
        #[arg(long)]
        chain: bool,
        /// Also run the three equivalent characterizations.
        #[arg(long)]
        equiv: bool,
    },
    /// Extract a core member, verify a candidate, or enumerate vertices.
    Member {
        path: PathBuf,
        /// Verify the allocation in this JSON file instead of extracting.
        #[arg(long)]
        check: Option<PathBuf>,
        /// List optimal dual vertices, up to this many visited bases.
        #[arg(long)]
        enumerate: Option<usize>,
    },
    /// Smallest approximation factor with a non-empty approximate core.
    Gamma { path: PathBuf },
    /// Brute-force verdict from all coalition constraints.
    Oracle {
        path: PathBuf,
        /// Also run the theorem path and compare verdicts.
        #[arg(long)]
        compare: bool,
    },
    /// Check the objective-side precondition matching the game sense.
    CheckIs { path: PathBuf },
    /// Run the three equivalent characterizations.
    Equiv { path: PathBuf },
    /// Search the relaxation's optimal face for an integral point.
    Integrality { path: PathBuf },
    /// Emit an instance file for an application family.
    Generate {
        /// portfolio | maxcut | assortment | qmatching | rmatching |
        /// sat-reduction
        family: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        risk: Option<String>,
        /// Complete graph on this many vertices (maxcut).
        #[arg(long)]
        complete: Option<usize>,
        /// Uniform weight for --complete.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        vertices: Option<usize>,
        /// Edge list "u-v:w,u-v:w" (weights optional, default 1).
        #[arg(long)]
        edges: Option<String>,
        /// Conflicting edge-index pairs "i-j;k-l" (qmatching).
        #[arg(long)]
        conflicts: Option<String>,
        /// Per-edge costs "d1,d2,..." (rmatching).
        #[arg(long)]
        costs: Option<String>,
        /// Ratio denominator offset (rmatching; default 1).
        #[arg(long)]
        d0: Option<String>,
        #[arg(long)]
        prices: Option<String>,
        #[arg(long)]
        values: Option<String>,
        /// (3,B2) formula file for sat-reduction.
        #[arg(long)]
        sat: Option<PathBuf>,
        /// Write the instance here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 1,
        Error::AssumptionViolated(_)
        | Error::PreconditionViolated { .. }
        | Error::NotGrounded(_)
        | Error::InvalidObjective(_)
        | Error::InvalidInstance(_)
        | Error::Not3B2(_)
        | Error::DimensionMismatch(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; anything else is a
            // usage error.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };

    let json = cli.json;
    let result = match &cli.command {
        Command::Analyze { path, chain, equiv } => commands::cmd_analyze(path, *chain, *equiv, json),
        Command::Member { path, check, enumerate } => {
            commands::cmd_member(path, check.as_deref(), *enumerate, json)
        }
        Command::Gamma { path } => commands::cmd_gamma(path, json),
        Command::Oracle { path, compare } => commands::cmd_oracle(path, *compare, json),
        Command::CheckIs { path } => commands::cmd_check_is(path, json),
        Command::Equiv { path } => commands::cmd_equiv(path, json),
        Command::Integrality { path } => commands::cmd_integrality(path, json),
        Command::Generate {
            family,
            mu,
            sigma,
            risk,
            complete,
            weight,
            vertices,
            edges,
            conflicts,
            costs,
            d0,
            prices,
            values,
            sat,
            out,
        } => {
            let opts = commands::GenerateOptions {
                mean: mu.clone(),
                covariance: sigma.clone(),
                risk: risk.clone(),
                complete: *complete,
                weight: weight.clone(),
                vertices: *vertices,
                edges: edges.clone(),
                conflicts: conflicts.clone(),
                costs: costs.clone(),
                d0: d0.clone(),
                prices: prices.clone(),
                values: values.clone(),
                sat: sat.clone(),
                out: out.clone(),
            };
            commands::cmd_generate(family, &opts)
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
