//! Acceptance sweep drivers; `experiment list` names them all.

use anyhow::{anyhow, Result};
use clap::Args;

use takahasi_core::experiments::{self, Options, Outcome};

use crate::render::Ctx;

#[derive(Args)]
pub struct Cmd {
    /// Experiment name, or `list`.
    name: String,
    /// Chain length override (notts).
    #[arg(long)]
    n_max: Option<u64>,
    /// Largest group order in randomized algebra sweeps (rees-bound).
    #[arg(long)]
    group_max: Option<usize>,
    /// Generators drawn per random instance (rees-bound).
    #[arg(long)]
    gens: Option<usize>,
    /// Largest alphabet in presentation sweeps (ltwo-sweep, per-machinery).
    #[arg(long)]
    letters: Option<usize>,
    /// Longest generator image in endomorphism pools.
    #[arg(long)]
    image_len: Option<usize>,
}

pub fn run(ctx: &Ctx, cmd: Cmd) -> Result<bool> {
    if cmd.name == "list" {
        for name in experiments::names() {
            println!("{name}");
        }
        return Ok(true);
    }
    let opts = Options {
        n_max: cmd.n_max,
        group_max: cmd.group_max,
        gens: cmd.gens,
        letters: cmd.letters,
        image_len: cmd.image_len,
    };
    let out = experiments::run(&cmd.name, ctx.seed, &opts)
        .ok_or_else(|| anyhow!("unknown experiment `{}` (try `experiment list`)", cmd.name))?;
    print_outcome(ctx, &out);
    Ok(out.passed)
}

pub fn print_outcome(ctx: &Ctx, out: &Outcome) {
    if ctx.json {
        println!(
            "{}",
            serde_json::to_string_pretty(out).expect("outcomes serialize")
        );
        return;
    }
    println!(
        "experiment {}: {} ({} checks, {} violations)",
        out.name,
        if out.passed { "PASS" } else { "FAIL" },
        out.checks,
        out.violations
    );
    println!("seed {}", out.seed);
    println!(
        "elapsed {} ms (target {} ms)",
        out.elapsed_ms, out.target_ms
    );
    for line in &out.lines {
        println!("{line}");
    }
    if let Some(first) = &out.first_counterexample {
        println!("first counterexample: {first}");
    }
}
