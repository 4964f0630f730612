//! Strong semilattices of groups.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use serde_json::json;

use takahasi_core::clifford::{CliffordJson, CliffordSemigroup, IndexValue};
use takahasi_core::orbit::{fix_points, orbit_data, periodic_points, OrbitReport};

use crate::common::{parse_clifford_element, EndoArg};
use crate::render::{table, yes_no, Ctx};

#[derive(Args)]
pub struct SemigroupArg {
    /// Clifford semigroup JSON file: meet table, group tables, link maps.
    #[arg(long)]
    file: PathBuf,
}

impl SemigroupArg {
    fn load(&self) -> Result<CliffordSemigroup> {
        let text = fs::read_to_string(&self.file)
            .with_context(|| format!("cannot read {}", self.file.display()))?;
        let json: CliffordJson = serde_json::from_str(&text)
            .with_context(|| format!("{} is not a Clifford semigroup", self.file.display()))?;
        Ok(CliffordSemigroup::from_json(&json)?)
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Per-level indices of ⟨elements⟩, their supremum, and the Green
    /// index.
    Index {
        #[command(flatten)]
        sg: SemigroupArg,
        /// Elements as `level,g` pairs.
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Green index alone.
    GreenIndex {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Retraction ψ: t ↦ te onto the level's maximal subgroup and the
    /// rank inequality it carries.
    Retraction {
        #[command(flatten)]
        sg: SemigroupArg,
        #[arg(long)]
        level: usize,
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
    /// Orbit structure and the levels the iterated images reach.
    Per {
        #[command(flatten)]
        sg: SemigroupArg,
        #[command(flatten)]
        endo: EndoArg,
    },
}

pub fn run(ctx: &Ctx, cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Index { sg, elements } => {
            let s = sg.load()?;
            let t = s.closure(&parse_elements(&elements)?)?;
            let report = s.index_report(&t)?;
            let rows: Vec<Vec<String>> = report
                .per_class
                .iter()
                .map(|(level, v)| vec![level.to_string(), fmt_index(v)])
                .collect();
            let mut lines = table(&["level", "index"], &rows);
            lines.push(format!("sup    {}", fmt_index(&report.sup)));
            lines.push(format!(
                "green  {}",
                report
                    .green
                    .map(|g| g.to_string())
                    .unwrap_or_else(|| "-".into())
            ));
            ctx.emit(
                lines,
                serde_json::to_value(&report).expect("reports serialize"),
            );
            Ok(true)
        }
        Cmd::GreenIndex { sg, elements } => {
            let s = sg.load()?;
            let t = s.closure(&parse_elements(&elements)?)?;
            let green = s.green_index(&t)?;
            ctx.emit(
                vec![format!("green index  {green}")],
                json!({ "green_index": green }),
            );
            Ok(true)
        }
        Cmd::Retraction {
            sg,
            level,
            elements,
        } => {
            let s = sg.load()?;
            let t = s.closure(&parse_elements(&elements)?)?;
            let report = s.retraction_check(&t, level)?;
            let ok = report.holds
                && report.psi_is_homomorphism
                && report.psi_fixes_intersection
                && report.j_test_agrees;
            ctx.emit(
                vec![
                    format!("level          {}", report.level),
                    format!("rk_G(T ∩ H)    {}", report.rk_g),
                    format!("rk_C(T)        {}", report.rk_c),
                    format!("holds          {}", yes_no(report.holds)),
                    format!("ψ homomorphism {}", yes_no(report.psi_is_homomorphism)),
                    format!("ψ fixes T ∩ H  {}", yes_no(report.psi_fixes_intersection)),
                    format!("J-test agrees  {}", yes_no(report.j_test_agrees)),
                ],
                serde_json::to_value(&report).expect("reports serialize"),
            );
            Ok(ok)
        }
        Cmd::Fix { sg, endo } => {
            let s = sg.load()?;
            let map = endo.resolve(s.element_count(), |x, y| s.mul_idx(x, y))?;
            let fixed: Vec<String> = fix_points(&map)
                .into_iter()
                .map(|i| fmt_element(s.element(i)))
                .collect();
            ctx.emit(
                vec![
                    format!("fixed  {} of {}", fixed.len(), s.element_count()),
                    fixed.join(" "),
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
            let periodic = periodic_points(&data)
                .into_iter()
                .map(|i| fmt_element(s.element(i)));
            crate::rees_cmd::emit_orbits(ctx, &report, periodic);
            if !ctx.json {
                for (step, levels) in s.image_levels(&map, s.level_count()).iter().enumerate() {
                    println!("levels after {} steps: {:?}", step + 1, levels);
                }
            }
            Ok(true)
        }
    }
}

fn parse_elements(texts: &[String]) -> Result<Vec<(usize, usize)>> {
    texts.iter().map(|t| parse_clifford_element(t)).collect()
}

fn fmt_element((a, g): (usize, usize)) -> String {
    format!("({a},{g})")
}

fn fmt_index(v: &IndexValue) -> String {
    match v {
        IndexValue::Finite(n) => n.to_string(),
        IndexValue::Infinite => "∞".into(),
    }
}
