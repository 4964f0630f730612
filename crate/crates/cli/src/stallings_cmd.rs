//! Subgroups of free groups through folded automata.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Subcommand;
use serde_json::json;

use takahasi_core::stallings::{chain_check, Automaton, AutomatonJson, StallingsGraph};
use takahasi_core::words::Alphabet;

use crate::common::{parse_chain_terms, parse_words, word_alphabet};
use crate::render::{table, yes_no, Ctx};

#[derive(Subcommand)]
pub enum Cmd {
    /// Fold an automaton to determinism.
    Fold {
        /// Automaton JSON file.
        #[arg(long)]
        file: PathBuf,
        /// Shuffle the fold order with this seed instead of first-found.
        #[arg(long)]
        shuffle_seed: Option<u64>,
    },
    /// Rank and free basis of the subgroup the words generate.
    Rank {
        /// Generator words over `a..z`, `'` for inverses (e.g. "a b'").
        generators: Vec<String>,
    },
    /// Is the word in the subgroup the generators span?
    Member {
        #[arg(long)]
        word: String,
        generators: Vec<String>,
    },
    /// All normalization stages of an automaton, with the final rank.
    Pipeline {
        #[arg(long)]
        file: PathBuf,
    },
    /// Ranks and stabilization point of an ascending subgroup chain; each
    /// term lists its generators separated by commas.
    Chain {
        /// Fail (exit 1) if any rank exceeds this.
        #[arg(long)]
        max_rank: Option<usize>,
        terms: Vec<String>,
    },
}

pub fn run(ctx: &Ctx, cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Fold { file, shuffle_seed } => {
            let (alphabet, automaton) = load(&file)?;
            let folded = match shuffle_seed {
                Some(s) => automaton.fold_seeded(s)?,
                None => automaton.fold()?,
            };
            emit_automaton(ctx, &alphabet, &folded);
            Ok(true)
        }
        Cmd::Rank { generators } => {
            let alphabet = word_alphabet();
            let graph = StallingsGraph::subgroup(&parse_words(&alphabet, &generators)?);
            let report = graph.rank_report();
            let basis: Vec<String> = graph
                .basis()
                .iter()
                .map(|w| alphabet.print_word(w))
                .collect();
            ctx.emit(
                vec![
                    format!("rank      {}", report.rank),
                    format!("vertices  {}", report.vertex_count),
                    format!("edges     {} (geometric)", report.edge_count / 2),
                    format!("basis     {}", basis.join("  ")),
                ],
                json!({
                    "rank": report.rank,
                    "vertex_count": report.vertex_count,
                    "geometric_edge_count": report.edge_count / 2,
                    "basis": basis,
                }),
            );
            Ok(true)
        }
        Cmd::Member { word, generators } => {
            let alphabet = word_alphabet();
            let graph = StallingsGraph::subgroup(&parse_words(&alphabet, &generators)?);
            let w = alphabet.parse_word(&word)?;
            let member = graph.contains(&w);
            ctx.emit(
                vec![format!(
                    "{} is {}a member",
                    alphabet.print_word(&w.free_reduce()),
                    if member { "" } else { "not " }
                )],
                json!({ "word": alphabet.print_word(&w), "member": member }),
            );
            Ok(member)
        }
        Cmd::Pipeline { file } => {
            let (_, automaton) = load(&file)?;
            let p = automaton.pipeline()?;
            let stages: Vec<(&str, &Automaton)> = vec![
                ("trimmed", &p.trimmed),
                ("merged-terminals", &p.a1),
                ("dualized", &p.a2),
                ("folded", &p.a3),
                ("pruned", &p.a4),
            ];
            let rows: Vec<Vec<String>> = stages
                .iter()
                .map(|(name, a)| {
                    vec![
                        name.to_string(),
                        a.vertex_count().to_string(),
                        a.edge_count().to_string(),
                        a.terminals().len().to_string(),
                    ]
                })
                .collect();
            let mut lines = table(&["stage", "vertices", "edges", "terminals"], &rows);
            lines.push(format!("rank        {}", p.report.rank));
            lines.push(format!("edge bound  {}", p.a4.ragr_bound()));
            let stage_values: Vec<serde_json::Value> = stages
                .iter()
                .map(|(name, a)| {
                    json!({
                        "stage": name,
                        "vertices": a.vertex_count(),
                        "edges": a.edge_count(),
                        "terminals": a.terminals().len(),
                    })
                })
                .collect();
            ctx.emit(
                lines,
                json!({
                    "stages": stage_values,
                    "rank_report": p.report,
                    "ragr_bound": p.a4.ragr_bound(),
                }),
            );
            Ok(true)
        }
        Cmd::Chain { max_rank, terms } => {
            let alphabet = word_alphabet();
            let chain = parse_chain_terms(&alphabet, &terms)?;
            let bound = max_rank.unwrap_or(usize::MAX);
            let report = chain_check(&chain, bound)?;
            let ok = max_rank.is_none() || report.within_bound;
            ctx.emit(
                vec![
                    format!(
                        "ranks          {}",
                        report
                            .ranks
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                    format!("stabilized at  term {}", report.stabilized_at),
                    format!(
                        "within bound   {}",
                        match max_rank {
                            Some(r) => format!("{} (max rank {r})", yes_no(report.within_bound)),
                            None => "-".into(),
                        }
                    ),
                ],
                json!({
                    "ranks": report.ranks,
                    "stabilized_at": report.stabilized_at,
                    "max_rank": max_rank,
                    "within_bound": max_rank.map(|_| report.within_bound),
                }),
            );
            Ok(ok)
        }
    }
}

fn load(path: &PathBuf) -> Result<(Alphabet, Automaton)> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let json: AutomatonJson = serde_json::from_str(&text)
        .with_context(|| format!("{} is not an automaton", path.display()))?;
    Ok(Automaton::from_json(&json)?)
}

fn emit_automaton(ctx: &Ctx, alphabet: &Alphabet, a: &Automaton) {
    let rows: Vec<Vec<String>> = a
        .edges()
        .iter()
        .map(|&(u, l, v)| vec![u.to_string(), alphabet.print_letter(l), v.to_string()])
        .collect();
    let mut lines = vec![
        format!("vertices       {}", a.vertex_count()),
        format!("base           {}", a.base()),
        format!(
            "terminals      {}",
            a.terminals()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ),
        format!("deterministic  {}", yes_no(a.is_deterministic())),
    ];
    lines.extend(table(&["from", "label", "to"], &rows));
    ctx.emit(
        lines,
        serde_json::to_value(a.to_json(alphabet)).expect("automata serialize"),
    );
}
