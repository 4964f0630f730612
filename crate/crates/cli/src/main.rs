//! `takahasi` — desk-scale computational semigroup theory.
//!
//! Query commands exit 0 on success; commands that assert something
//! (membership, bounds, confluence, experiments) exit 1 when the assertion
//! fails and 2 on usage or input errors. `TAKAHASI_CAP` overrides the
//! global search caps.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod clifford_cmd;
mod common;
mod experiment_cmd;
mod monoid_cmd;
mod numeric_cmd;
mod rees_cmd;
mod render;
mod stallings_cmd;

#[derive(Parser)]
#[command(
    name = "takahasi",
    version,
    about = "Computational semigroup theory at desk scale"
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Master seed for randomized sweeps; recorded in their reports.
    #[arg(long, global = true, default_value_t = takahasi_core::experiments::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand)]
enum Family {
    /// Subgroups of free groups via folded automata.
    #[command(subcommand)]
    Stallings(stallings_cmd::Cmd),
    /// Additive subsemigroups of ℕ and the plane chain.
    #[command(subcommand)]
    Numeric(numeric_cmd::Cmd),
    /// Completely simple semigroups in Rees matrix coordinates.
    #[command(subcommand)]
    Rees(rees_cmd::Cmd),
    /// Strong semilattices of groups.
    #[command(subcommand)]
    Clifford(clifford_cmd::Cmd),
    /// Balanced presentations and their endomorphisms.
    #[command(subcommand)]
    Monoid(monoid_cmd::Cmd),
    /// Acceptance sweeps.
    Experiment(experiment_cmd::Cmd),
}

/// Die quietly on a closed pipe (`takahasi … | head`) instead of
/// panicking mid-print; Rust ignores SIGPIPE by default.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    let ctx = render::Ctx {
        json: cli.json,
        seed: cli.seed,
    };
    let result = match cli.family {
        Family::Stallings(cmd) => stallings_cmd::run(&ctx, cmd),
        Family::Numeric(cmd) => numeric_cmd::run(&ctx, cmd),
        Family::Rees(cmd) => rees_cmd::run(&ctx, cmd),
        Family::Clifford(cmd) => clifford_cmd::run(&ctx, cmd),
        Family::Monoid(cmd) => monoid_cmd::run(&ctx, cmd),
        Family::Experiment(cmd) => experiment_cmd::run(&ctx, cmd),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
