//! Completely simple semigroups in Rees matrix coordinates.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use serde_json::json;

use takahasi_core::groups::Group;
use takahasi_core::orbit::{fix_points, orbit_data, periodic_points, OrbitReport};
use takahasi_core::rees::{ReesElement, ReesJson, ReesSemigroup};

use crate::common::{parse_matrix, parse_rees_element, EndoArg};
use crate::render::{table, yes_no, Ctx};

/// The semigroup comes from a JSON file or from a named group plus an
/// inline sandwich matrix.
#[derive(Args)]
pub struct SemigroupArg {
    /// Rees semigroup JSON file.
    #[arg(long, conflicts_with_all = ["group", "matrix"])]
    file: Option<PathBuf>,
    /// Named group: C*, D*, S2..S4 and x-products (e.g. C2xC2).
    #[arg(long, requires = "matrix")]
    group: Option<String>,
    /// Sandwich entries p[λ][i]: λ-rows separated by `;`, i-entries by
    /// spaces (e.g. "0 1; 1 0").
    #[arg(long, requires = "group")]
    matrix: Option<String>,
}

impl SemigroupArg {
    fn load(&self) -> Result<ReesSemigroup> {
        match (&self.file, &self.group, &self.matrix) {
            (Some(path), _, _) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?;
                let json: ReesJson = serde_json::from_str(&text)
                    .with_context(|| format!("{} is not a Rees semigroup", path.display()))?;
                Ok(ReesSemigroup::from_json(&json)?)
            }
            (None, Some(name), Some(matrix)) => {
                let group = Group::parse_named(name)?;
                let p = parse_matrix(matrix)?;
                let rows = p[0].len();
                let cols = p.len();
                Ok(ReesSemigroup::new(group, rows, cols, p)?)
            }
            _ => bail!("provide --file or both --group and --matrix"),
        }
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Closure of elements under product and H-class inverse.
    Closure {
        #[command(flatten)]
        sg: SemigroupArg,
        /// Elements as `i,g,lambda` triples.
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Group image of the (row, col) H-class of the closure.
    Component {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Membership automaton of one H-class component.
    Automaton {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        /// Emit Graphviz instead of a table.
        #[arg(long)]
        dot: bool,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Component rank against the bound rk_CS² + 1.
    Bound {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Fixed elements of an endomorphism.
    Fix {
        #[command(flatten)]
        sg: SemigroupArg,
        #[command(flatten)]
        endo: EndoArg,
    },
    /// Orbit structure: preperiods, periods, and the periodic elements.
    Per {
        #[command(flatten)]
        sg: SemigroupArg,
        #[command(flatten)]
        endo: EndoArg,
    },
}

pub fn run(ctx: &Ctx, cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Closure { sg, elements } => {
            let s = sg.load()?;
            let sub = s.subalgebra(&parse_elements(&elements)?)?;
            let listed: Vec<String> = sub.elements.iter().map(|&e| fmt_element(e)).collect();
            ctx.emit(
                vec![
                    format!("size      {}", sub.elements.len()),
                    format!("rows      {:?}", sub.rows),
                    format!("cols      {:?}", sub.cols),
                    format!("elements  {}", listed.join(" ")),
                ],
                json!({
                    "size": sub.elements.len(),
                    "rows": sub.rows,
                    "cols": sub.cols,
                    "elements": sub.elements.iter().copied().collect::<Vec<ReesElement>>(),
                }),
            );
            Ok(true)
        }
        Cmd::Component {
            sg,
            row,
            col,
            elements,
        } => {
            let s = sg.load()?;
            let sub = s.subalgebra(&parse_elements(&elements)?)?;
            let component = s.component_subgroup(&sub, row, col)?;
            let rank = s.group().subset_rank(&component)?;
            ctx.emit(
                vec![
                    format!("order     {}", component.len()),
                    format!("rank      {rank}"),
                    format!(
                        "elements  {}",
                        component
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                ],
                json!({
                    "row": row,
                    "col": col,
                    "order": component.len(),
                    "rank": rank,
                    "elements": component.iter().copied().collect::<Vec<usize>>(),
                }),
            );
            Ok(true)
        }
        Cmd::Automaton {
            sg,
            row,
            col,
            dot,
            elements,
        } => {
            let s = sg.load()?;
            let (alphabet, automaton) = s.group_automaton(&parse_elements(&elements)?, row, col)?;
            if dot {
                print!("{}", automaton.to_dot(&alphabet));
                return Ok(true);
            }
            let rows: Vec<Vec<String>> = automaton
                .edges()
                .iter()
                .map(|&(u, l, v)| vec![u.to_string(), alphabet.print_letter(l), v.to_string()])
                .collect();
            let mut lines = vec![
                format!("states     {}", automaton.vertex_count()),
                format!("edge bound {}", automaton.ragr_bound()),
            ];
            lines.extend(table(&["from", "label", "to"], &rows));
            ctx.emit(
                lines,
                serde_json::to_value(automaton.to_json(&alphabet)).expect("automata serialize"),
            );
            Ok(true)
        }
        Cmd::Bound {
            sg,
            row,
            col,
            elements,
        } => {
            let s = sg.load()?;
            let report = s.component_report(&parse_elements(&elements)?, row, col)?;
            let holds = report.component_rank <= report.quadratic_bound;
            ctx.emit(
                vec![
                    format!("subalgebra size  {}", report.subalgebra_size),
                    format!("component order  {}", report.component_order),
                    format!("component rank   {}", report.component_rank),
                    format!("cs rank          {}", report.cs_rank),
                    format!("automaton bound  {}", report.automaton_bound),
                    format!("quadratic bound  {}", report.quadratic_bound),
                    format!("holds            {}", yes_no(holds)),
                ],
                json!({
                    "report": report,
                    "holds": holds,
                }),
            );
            Ok(holds)
        }
        Cmd::Fix { sg, endo } => {
            let s = sg.load()?;
            let map = endo.resolve(s.element_count(), |x, y| s.mul_idx(x, y))?;
            let fixed: Vec<ReesElement> =
                fix_points(&map).into_iter().map(|i| s.element(i)).collect();
            let listed: Vec<String> = fixed.iter().map(|&e| fmt_element(e)).collect();
            ctx.emit(
                vec![
                    format!("fixed  {} of {}", fixed.len(), s.element_count()),
                    listed.join(" "),
                ],
                json!({ "count": fixed.len(), "fixed": fixed }),
            );
            Ok(true)
        }
        Cmd::Per { sg, endo } => {
            let s = sg.load()?;
            let map = endo.resolve(s.element_count(), |x, y| s.mul_idx(x, y))?;
            let report = OrbitReport::of(&map);
            let data = orbit_data(&map);
            let periodic: Vec<ReesElement> = periodic_points(&data)
                .into_iter()
                .map(|i| s.element(i))
                .collect();
            emit_orbits(ctx, &report, periodic.iter().map(|&e| fmt_element(e)));
            Ok(true)
        }
    }
}

fn parse_elements(texts: &[String]) -> Result<Vec<ReesElement>> {
    texts.iter().map(|t| parse_rees_element(t)).collect()
}

fn fmt_element((i, g, l): ReesElement) -> String {
    format!("({i},{g},{l})")
}

/// Shared by the Rees and Clifford `per` subcommands.
pub fn emit_orbits(ctx: &Ctx, report: &OrbitReport, periodic: impl Iterator<Item = String>) {
    let periodic: Vec<String> = periodic.collect();
    ctx.emit(
        vec![
            format!("periodic       {}", periodic.join(" ")),
            format!("max preperiod  {}", report.max_preperiod),
            format!("period lcm     {}", report.period_lcm),
            format!("stabilization  k = {}", report.stabilization),
        ],
        json!({
            "report": report,
            "periodic": periodic,
        }),
    );
}
