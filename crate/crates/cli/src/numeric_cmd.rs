//! Additive subsemigroups of ℕ and the strictly ascending plane chain.

use anyhow::Result;
use clap::Subcommand;
use serde_json::json;

use takahasi_core::numeric::{chain_profiles, classify_int, plane_chain_check, NumericSemigroup};

use crate::common::split_commas;
use crate::render::{table, yes_no, Ctx};

#[derive(Subcommand)]
pub enum Cmd {
    /// Gcd d and first segment point p of ⟨generators⟩ ⊆ ℕ₊.
    Profile { generators: Vec<u64> },
    /// Is the target a nonempty sum of the generators?
    Member {
        #[arg(long)]
        target: u64,
        generators: Vec<u64>,
    },
    /// Sign shape of the additive closure of nonzero integers.
    Classify {
        #[arg(allow_hyphen_values = true)]
        generators: Vec<i64>,
    },
    /// Profiles along an ascending chain; each term lists its generators
    /// separated by commas.
    Chain { terms: Vec<String> },
    /// The plane chain ⟨(−2,0), (2n−1,1)⟩: ascending and strict.
    Notts {
        #[arg(long, default_value_t = 25)]
        n_max: u64,
    },
}

pub fn run(ctx: &Ctx, cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Profile { generators } => {
            let s = NumericSemigroup::new(&generators)?;
            let report = s.report();
            ctx.emit(
                vec![
                    format!("d                   {}", report.d),
                    format!("p                   {}", report.p),
                    format!(
                        "minimal generators  {}",
                        report
                            .minimal_generators
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                ],
                serde_json::to_value(&report).expect("reports serialize"),
            );
            Ok(true)
        }
        Cmd::Member { target, generators } => {
            let s = NumericSemigroup::new(&generators)?;
            let member = s.contains(target);
            ctx.emit(
                vec![format!(
                    "{target} is {}a member",
                    if member { "" } else { "not " }
                )],
                json!({ "target": target, "member": member }),
            );
            Ok(member)
        }
        Cmd::Classify { generators } => {
            let class = classify_int(&generators)?;
            ctx.emit(
                vec![format!("{class:?}")],
                serde_json::to_value(&class).expect("reports serialize"),
            );
            Ok(true)
        }
        Cmd::Chain { terms } => {
            let chain: Vec<Vec<u64>> = terms
                .iter()
                .map(|t| {
                    split_commas(t)
                        .iter()
                        .map(|s| s.parse::<u64>().map_err(anyhow::Error::from))
                        .collect()
                })
                .collect::<Result<_>>()?;
            let reports = chain_profiles(&chain)?;
            let rows: Vec<Vec<String>> = reports
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        (i + 1).to_string(),
                        r.d.to_string(),
                        r.p.to_string(),
                        r.minimal_generators
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            ctx.emit(
                table(&["term", "d", "p", "minimal generators"], &rows),
                serde_json::to_value(&reports).expect("reports serialize"),
            );
            Ok(true)
        }
        Cmd::Notts { n_max } => {
            let report = plane_chain_check(n_max);
            let ok = report.ascending && report.strictly;
            let mut lines = vec![
                format!("terms      {}", report.terms),
                format!("ascending  {}", yes_no(report.ascending)),
                format!("strict     {}", yes_no(report.strictly)),
            ];
            lines.extend(report.failures.iter().cloned());
            ctx.emit(
                lines,
                serde_json::to_value(&report).expect("reports serialize"),
            );
            Ok(ok)
        }
    }
}
