//! Balanced monoid and semigroup presentations and their endomorphisms.

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use serde_json::json;

use takahasi_core::caps;
use takahasi_core::experiments::{self, Options};
use takahasi_core::presentations::rewrite::{
    in_normal_form_language, square_swap_system, RewriteSystem,
};
use takahasi_core::presentations::{
    exth_check, exth_presentation, Endo, LetterOrbit, Presentation,
};

use crate::common::print_letters;
use crate::experiment_cmd::print_outcome;
use crate::render::{table, yes_no, Ctx};

#[derive(Args)]
pub struct PresArg {
    /// Presentation text, e.g. "monoid a b ; a b = b a".
    #[arg(short, long)]
    presentation: String,
}

impl PresArg {
    fn load(&self) -> Result<Presentation> {
        Ok(Presentation::parse(&self.presentation)?)
    }
}

#[derive(Args)]
pub struct EndoArg {
    /// Generator images, e.g. "a -> b ; b -> a".
    #[arg(short, long)]
    endo: String,
}

impl EndoArg {
    fn load(&self, p: &Presentation) -> Result<Endo> {
        Ok(p.validate_endo(p.parse_endo(&self.endo)?)?)
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Shortlex-least word of the congruence class.
    Canon {
        #[command(flatten)]
        pres: PresArg,
        word: String,
    },
    /// Are the two words equal in the presented monoid?
    Equal {
        #[command(flatten)]
        pres: PresArg,
        left: String,
        right: String,
    },
    /// The finite set of classes J-above a word.
    Jabove {
        #[command(flatten)]
        pres: PresArg,
        word: String,
    },
    /// Fixed points of an endomorphism up to a length bound.
    Fix {
        #[command(flatten)]
        pres: PresArg,
        #[command(flatten)]
        endo: EndoArg,
        #[arg(long, default_value_t = 8)]
        length: usize,
    },
    /// Periodic points: least periods, indecomposables, and the bound R.
    Per {
        #[command(flatten)]
        pres: PresArg,
        #[command(flatten)]
        endo: EndoArg,
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// Stabilization is reported against the factorial chain up to
        /// this window.
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
    /// Verify xφ^R ≡ x for every reported periodic x.
    PeriodCheck {
        #[command(flatten)]
        pres: PresArg,
        #[command(flatten)]
        endo: EndoArg,
        #[arg(long, default_value_t = 8)]
        length: usize,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
    /// The (ca)ⁿc family: an infinitely generated fixed submonoid.
    Exth {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Fixed-point rank sweep over short one-relator presentations.
    LtwoSweep {
        #[arg(long)]
        letters: Option<usize>,
        #[arg(long)]
        image_len: Option<usize>,
    },
    /// Critical pairs, local confluence, and normal forms of a rewriting
    /// system (default: bb → aa, baa → aab).
    Rewrite {
        /// System text, e.g. "a b ; bb -> aa ; baa -> aab".
        #[arg(long)]
        rules: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

pub fn run(ctx: &Ctx, cmd: Cmd) -> Result<bool> {
    let cap = caps::search_cap();
    match cmd {
        Cmd::Canon { pres, word } => {
            let p = pres.load()?;
            let w = p.parse_mword(&word)?;
            let c = p.canonical(&w, cap)?;
            ctx.emit(
                vec![p.print_mword(&c)],
                json!({ "word": p.print_mword(&w), "canonical": p.print_mword(&c) }),
            );
            Ok(true)
        }
        Cmd::Equal { pres, left, right } => {
            let p = pres.load()?;
            let l = p.parse_mword(&left)?;
            let r = p.parse_mword(&right)?;
            let equal = p.equal(&l, &r, cap)?;
            ctx.emit(
                vec![format!("equal: {}", yes_no(equal))],
                json!({ "equal": equal }),
            );
            Ok(equal)
        }
        Cmd::Jabove { pres, word } => {
            let p = pres.load()?;
            let w = p.parse_mword(&word)?;
            let above = p.j_above(&w, cap)?;
            let listed: Vec<String> = above.iter().map(|x| p.print_mword(x)).collect();
            ctx.emit(
                vec![
                    format!("classes J-above  {}", listed.len()),
                    listed.join(" "),
                ],
                json!({ "count": listed.len(), "classes": listed }),
            );
            Ok(true)
        }
        Cmd::Fix { pres, endo, length } => {
            let p = pres.load()?;
            let phi = endo.load(&p)?;
            let report = p.fix_up_to(&phi, length, cap)?;
            let fixed: Vec<String> = report.fixed.iter().map(|w| p.print_mword(w)).collect();
            let indec: Vec<String> = report
                .indecomposables
                .iter()
                .map(|w| p.print_mword(w))
                .collect();
            ctx.emit(
                vec![
                    format!("length bound     {}", report.length_bound),
                    format!("fixed            {}", fixed.join(" ")),
                    format!("indecomposables  {}", indec.join(" ")),
                    format!("rank at bound    {}", report.rank_at_l),
                ],
                json!({
                    "length_bound": report.length_bound,
                    "fixed": fixed,
                    "indecomposables": indec,
                    "rank_at_l": report.rank_at_l,
                }),
            );
            Ok(true)
        }
        Cmd::Per {
            pres,
            endo,
            length,
            window,
        } => {
            let p = pres.load()?;
            let phi = endo.load(&p)?;
            let report = p.per_up_to(&phi, length, window, cap)?;
            let rows: Vec<Vec<String>> = report
                .per
                .iter()
                .zip(&report.periods)
                .map(|(w, per)| vec![p.print_mword(w), per.to_string()])
                .collect();
            let mut lines = table(&["periodic", "period"], &rows);
            lines.push(format!(
                "stationary at    {}",
                report
                    .stationary_at
                    .map(|k| format!("k = {k} ({})", {
                        if report.stabilized_in_window {
                            "within window"
                        } else {
                            "outside window"
                        }
                    }))
                    .unwrap_or_else(|| "undetermined".into())
            ));
            lines.push(format!(
                "indecomposables  {}",
                report
                    .indecomposables
                    .iter()
                    .map(|w| p.print_mword(w))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            lines.push(format!("period bound R   {}", report.period_bound));
            for (i, orbit) in report.generator_orbits.iter().enumerate() {
                lines.push(format!(
                    "orbit of {}       {}",
                    p.alphabet().name(i as u32).unwrap_or("?"),
                    fmt_orbit(orbit)
                ));
            }
            if !report.undetermined.is_empty() {
                lines.push(format!(
                    "undetermined     {}",
                    report
                        .undetermined
                        .iter()
                        .map(|w| p.print_mword(w))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            ctx.emit(
                lines,
                json!({
                    "length_bound": report.length_bound,
                    "window": report.window,
                    "per": report.per.iter().map(|w| p.print_mword(w)).collect::<Vec<_>>(),
                    "periods": report.periods,
                    "stationary_at": report.stationary_at,
                    "stabilized_in_window": report.stabilized_in_window,
                    "indecomposables": report.indecomposables.iter().map(|w| p.print_mword(w)).collect::<Vec<_>>(),
                    "period_bound": report.period_bound,
                    "generator_orbits": report.generator_orbits.iter().map(fmt_orbit).collect::<Vec<_>>(),
                    "undetermined": report.undetermined.iter().map(|w| p.print_mword(w)).collect::<Vec<_>>(),
                }),
            );
            Ok(report.undetermined.is_empty())
        }
        Cmd::PeriodCheck {
            pres,
            endo,
            length,
            window,
        } => {
            let p = pres.load()?;
            let phi = endo.load(&p)?;
            let report = p.per_up_to(&phi, length, window, cap)?;
            let (ok, witness) = p.period_check(&phi, &report, cap)?;
            let all_ok = ok && report.undetermined.is_empty();
            ctx.emit(
                vec![
                    format!("period bound R  {}", report.period_bound),
                    format!("xφ^R ≡ x        {}", yes_no(ok)),
                    format!(
                        "witness         {}",
                        witness
                            .as_ref()
                            .map(|w| p.print_mword(w))
                            .unwrap_or_else(|| "-".into())
                    ),
                ],
                json!({
                    "period_bound": report.period_bound,
                    "holds": ok,
                    "witness": witness.map(|w| p.print_mword(&w)),
                    "undetermined": report.undetermined.len(),
                }),
            );
            Ok(all_ok)
        }
        Cmd::Exth { n_max } => {
            let p = exth_presentation();
            let report = exth_check(n_max)?;
            let ok = report.all_fixed
                && report.all_distinct
                && report.all_indecomposable
                && report.counts_strictly_increase;
            let rows: Vec<Vec<String>> = report
                .counts
                .iter()
                .map(|&(l, n)| vec![l.to_string(), n.to_string()])
                .collect();
            let mut lines = vec![
                format!(
                    "words               {}",
                    report
                        .words
                        .iter()
                        .map(|w| p.print_mword(w))
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                format!("all fixed           {}", yes_no(report.all_fixed)),
                format!("all distinct        {}", yes_no(report.all_distinct)),
                format!("all indecomposable  {}", yes_no(report.all_indecomposable)),
                format!(
                    "counts increase     {}",
                    yes_no(report.counts_strictly_increase)
                ),
            ];
            lines.extend(table(&["length bound", "indecomposables"], &rows));
            ctx.emit(
                lines,
                json!({
                    "n_max": report.n_max,
                    "words": report.words.iter().map(|w| p.print_mword(w)).collect::<Vec<_>>(),
                    "all_fixed": report.all_fixed,
                    "all_distinct": report.all_distinct,
                    "all_indecomposable": report.all_indecomposable,
                    "counts": report.counts,
                    "counts_strictly_increase": report.counts_strictly_increase,
                }),
            );
            Ok(ok)
        }
        Cmd::LtwoSweep { letters, image_len } => {
            let opts = Options {
                letters,
                image_len,
                ..Options::default()
            };
            let out =
                experiments::run("ltwo-sweep", ctx.seed, &opts).expect("registered experiment");
            print_outcome(ctx, &out);
            Ok(out.passed)
        }
        Cmd::Rewrite { rules, max_len } => {
            let custom = rules.is_some();
            let sys = match rules {
                Some(text) => RewriteSystem::parse(&text)?,
                None => square_swap_system(),
            };
            let alphabet = sys.alphabet().clone();
            let report = sys.check_local_confluence();
            let k = alphabet.len();
            match k.checked_pow(max_len as u32) {
                Some(n) if n <= 2_000_000 => {}
                _ => bail!("{k}^{max_len} words is past the enumeration budget"),
            }
            let mut normal_forms = 0usize;
            let mut language_mismatches = 0usize;
            for len in 0..=max_len {
                for_each_word(k, len, &mut |w| {
                    let normal = sys.is_normal(w);
                    normal_forms += normal as usize;
                    if !custom && normal != in_normal_form_language(w) {
                        language_mismatches += 1;
                    }
                });
            }
            let language_agrees = (!custom).then_some(language_mismatches == 0);
            let rows: Vec<Vec<String>> = report
                .pairs
                .iter()
                .map(|pair| {
                    vec![
                        print_letters(&alphabet, &pair.source),
                        print_letters(&alphabet, &pair.left_nf),
                        print_letters(&alphabet, &pair.right_nf),
                        yes_no(pair.joinable).into(),
                    ]
                })
                .collect();
            let mut lines = vec![format!("order  {}", sys.order_descriptor())];
            lines.extend(table(
                &["critical pair", "left nf", "right nf", "joins"],
                &rows,
            ));
            lines.push(format!(
                "locally confluent      {}",
                yes_no(report.locally_confluent)
            ));
            lines.push(format!("normal forms ≤ {max_len}       {normal_forms}"));
            if let Some(agrees) = language_agrees {
                lines.push(format!("a*(ba)*{{1,b}} language  {}", yes_no(agrees)));
            }
            ctx.emit(
                lines,
                json!({
                    "order": sys.order_descriptor(),
                    "critical_pairs": report.pairs.iter().map(|pair| json!({
                        "source": print_letters(&alphabet, &pair.source),
                        "left_nf": print_letters(&alphabet, &pair.left_nf),
                        "right_nf": print_letters(&alphabet, &pair.right_nf),
                        "joinable": pair.joinable,
                    })).collect::<Vec<_>>(),
                    "locally_confluent": report.locally_confluent,
                    "max_len": max_len,
                    "normal_forms": normal_forms,
                    "language_agrees": language_agrees,
                }),
            );
            Ok(report.locally_confluent && language_agrees.unwrap_or(true))
        }
    }
}

fn fmt_orbit(orbit: &LetterOrbit) -> String {
    match orbit {
        LetterOrbit::Periodic { preperiod, period } => {
            format!("periodic (preperiod {preperiod}, period {period})")
        }
        LetterOrbit::Unbounded { step, length } => {
            format!("unbounded (length {length} at step {step})")
        }
        LetterOrbit::Unresolved { steps } => format!("unresolved after {steps} steps"),
    }
}

/// All words of the given length over `0..k`, lexicographically.
fn for_each_word(k: usize, len: usize, f: &mut impl FnMut(&[u8])) {
    let mut w = vec![0u8; len];
    loop {
        f(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (w[i] as usize) + 1 < k {
                w[i] += 1;
                w[i + 1..].fill(0);
                break;
            }
        }
    }
}
