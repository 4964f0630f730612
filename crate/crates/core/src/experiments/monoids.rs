//! Balanced-presentation sweeps: fixed and periodic points of every valid
//! small-image endomorphism of every two-letter-relator monoid, the two
//! closed-form fixed submonoids, the confluent rewriting system, and the
//! non-finitely-generated fixed submonoid example.

use std::collections::{BTreeSet, HashSet};

use crate::caps;
use crate::presentations::{self, rewrite, Endo, Flavor, MWord, Presentation};
use crate::words::Alphabet;

use super::{Build, Options, Outcome};

const SWEEP_LENGTH_BOUND: usize = 8;
const SWEEP_WINDOW: usize = 6;

/// All one-relator presentations `u = v` with `|u| = |v| = 2` over `k`
/// letters, up to swapping the sides (the trivial relation included):
/// `k²(k² + 1)/2` presentations.
fn one_relator_presentations(k: usize) -> Vec<Presentation> {
    let ab = Alphabet::latin(k);
    let mut words: Vec<MWord> = Vec::new();
    for x in 0..k as u8 {
        for y in 0..k as u8 {
            words.push(vec![x, y]);
        }
    }
    let mut out = Vec::new();
    for i in 0..words.len() {
        for j in i..words.len() {
            out.push(
                Presentation::new(
                    Flavor::Monoid,
                    ab.clone(),
                    vec![(words[i].clone(), words[j].clone())],
                )
                .expect("two-letter relations are balanced"),
            );
        }
    }
    out
}

/// Every generator-image tuple over the pool `{ε} ∪ A ∪ … ∪ A^max_len`,
/// in odometer order: `(1 + k + … + k^max_len)^k` tuples.
fn candidate_image_tuples(k: usize, max_len: usize) -> Vec<Vec<MWord>> {
    let mut pool: Vec<MWord> = vec![Vec::new()];
    let mut layer: Vec<MWord> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k as u8 {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        pool.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        out.push(idx.iter().map(|&i| pool[i].clone()).collect());
        let mut d = k;
        loop {
            if d == 0 {
                return out;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < pool.len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn describe(p: &Presentation, phi: &Endo) -> String {
    let (u, v) = &p.relations()[0];
    format!(
        "⟨{} | {} = {}⟩, {}",
        p.alphabet().symbols().collect::<Vec<_>>().join(" "),
        p.print_mword(u),
        p.print_mword(v),
        p.print_endo(phi)
    )
}

/// Every one-relator balanced presentation over 2 and 3 letters × every
/// valid endomorphism with images of length ≤ 2 (ε included): the fixed
/// submonoid restricted to length ≤ 8 needs at most `|A|` generators.
pub fn ltwo_sweep(seed: u64, opts: &Options) -> Outcome {
    let mut b = Build::new("ltwo-sweep", seed, 300_000);
    let cap = caps::search_cap();
    let letters = opts.letters.unwrap_or(3).max(2);
    let image_len = opts.image_len.unwrap_or(2);
    for k in 2..=letters {
        let pres = one_relator_presentations(k);
        b.check(pres.len() == k * k * (k * k + 1) / 2, || {
            format!("{k} letters: {} presentations generated", pres.len())
        });
        let tuples = candidate_image_tuples(k, image_len);
        let pool = (0..=image_len).map(|d| k.pow(d as u32)).sum::<usize>();
        b.check(tuples.len() == pool.pow(k as u32), || {
            format!("{k} letters: {} image tuples generated", tuples.len())
        });
        let mut valid = 0usize;
        for p in &pres {
            let table = match p.canonical_table_up_to(SWEEP_LENGTH_BOUND, cap) {
                Ok(t) => t,
                Err(e) => {
                    b.check(false, || format!("table for {}: {e}", p.to_text()));
                    continue;
                }
            };
            for tuple in &tuples {
                let Ok(phi) = p.validate_endo(tuple.clone()) else {
                    continue;
                };
                valid += 1;
                let report = p.fix_with_table(&phi, &table);
                b.check(report.rank_at_l <= k, || {
                    format!(
                        "{}: fixed submonoid needs {} generators at length ≤ {}",
                        describe(p, &phi),
                        report.rank_at_l,
                        SWEEP_LENGTH_BOUND
                    )
                });
            }
        }
        b.line(format!(
            "{k} letters: {} presentations × {} candidates, {valid} valid endomorphisms",
            pres.len(),
            tuples.len()
        ));
    }
    b.finish()
}

/// The two closed-form fixed submonoids under the letter swap, checked
/// against the sweep machinery at length ≤ 8.
pub fn fix_closed_forms(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("fix-closed-forms", seed, 5_000);
    let cap = caps::search_cap();

    // ⟨a, b | ab = ba⟩, a ↔ b: Fix = {ab}*, and the canonical form of
    // (ab)^k is a^k b^k.
    let run = |b: &mut Build,
               text: &str,
               indecomposable: MWord,
               expected: Vec<MWord>,
               powers: Vec<(MWord, MWord)>| {
        let p = match Presentation::parse(text) {
            Ok(p) => p,
            Err(e) => {
                b.check(false, || format!("{text}: {e}"));
                return;
            }
        };
        let phi = match p
            .parse_endo("a -> b ; b -> a")
            .and_then(|imgs| p.validate_endo(imgs))
        {
            Ok(phi) => phi,
            Err(e) => {
                b.check(false, || {
                    format!("{text}: swap is not an endomorphism: {e}")
                });
                return;
            }
        };
        match p.fix_up_to(&phi, SWEEP_LENGTH_BOUND, cap) {
            Ok(report) => {
                b.check(report.fixed == expected, || {
                    format!(
                        "{text}: fixed {:?} ≠ expected {:?}",
                        report
                            .fixed
                            .iter()
                            .map(|w| p.print_mword(w))
                            .collect::<Vec<_>>(),
                        expected
                            .iter()
                            .map(|w| p.print_mword(w))
                            .collect::<Vec<_>>()
                    )
                });
                b.check(
                    report.indecomposables == vec![indecomposable.clone()],
                    || {
                        format!(
                            "{text}: indecomposables {:?}",
                            report
                                .indecomposables
                                .iter()
                                .map(|w| p.print_mword(w))
                                .collect::<Vec<_>>()
                        )
                    },
                );
            }
            Err(e) => b.check(false, || format!("{text}: fixed-point sweep failed: {e}")),
        }
        for (w, canon) in powers {
            match p.canonical(&w, cap) {
                Ok(c) => b.check(c == canon, || {
                    format!(
                        "{text}: canonical of {} is {}, expected {}",
                        p.print_mword(&w),
                        p.print_mword(&c),
                        p.print_mword(&canon)
                    )
                }),
                Err(e) => b.check(false, || format!("{text}: canonicalization failed: {e}")),
            }
        }
    };

    // Fixed words of the commuting monoid: a^k b^k for 2k ≤ 8, i.e. the
    // canonical forms of the powers of ab; the only indecomposable is ab.
    let ab_fixed: Vec<MWord> = (1..=SWEEP_LENGTH_BOUND / 2)
        .map(|n| {
            let mut w = vec![0u8; n];
            w.extend(std::iter::repeat_n(1u8, n));
            w
        })
        .collect();
    let ab_powers: Vec<(MWord, MWord)> = (1..=SWEEP_LENGTH_BOUND / 2)
        .map(|n| {
            let w: MWord = [0u8, 1].iter().copied().cycle().take(2 * n).collect();
            (w, ab_fixed[n - 1].clone())
        })
        .collect();
    run(
        &mut b,
        "monoid a b ; ab = ba",
        vec![0, 1],
        ab_fixed,
        ab_powers,
    );

    // ⟨a, b | a² = b²⟩, a ↔ b: Fix = {a²}* — the even powers of a.
    let sq_fixed: Vec<MWord> = (1..=SWEEP_LENGTH_BOUND / 2)
        .map(|n| vec![0u8; 2 * n])
        .collect();
    let sq_powers: Vec<(MWord, MWord)> = (1..=SWEEP_LENGTH_BOUND / 2)
        .map(|n| (vec![1u8; 2 * n], vec![0u8; 2 * n]))
        .collect();
    run(
        &mut b,
        "monoid a b ; aa = bb",
        vec![0, 0],
        sq_fixed,
        sq_powers,
    );

    b.finish()
}

/// The two-rule system `bb → aa`, `baa → aab`: termination via the
/// fixed-length lexicographic order, exactly two critical pairs (both
/// joinable), and every normal form of length ≤ 8 lies in `a*(ba)*{1, b}`
/// — which is exactly the set of irreducible words.
pub fn rewrite_system(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("rewrite-system", seed, 5_000);
    let sys = rewrite::square_swap_system();
    b.line(format!("termination order: {}", sys.order_descriptor()));
    for (i, (l, r)) in sys.rules().iter().enumerate() {
        b.check(l.len() == r.len() && r < l, || {
            format!("rule #{i} does not decrease: {l:?} → {r:?}")
        });
    }
    let report = sys.check_local_confluence();
    b.check(report.locally_confluent, || {
        format!("unjoinable critical pair: {:?}", report.pairs)
    });
    b.check(report.pairs.len() == 2, || {
        format!("{} critical pairs, expected 2", report.pairs.len())
    });
    let sources: BTreeSet<MWord> = report.pairs.iter().map(|p| p.source.clone()).collect();
    let expected: BTreeSet<MWord> = BTreeSet::from([vec![1, 1, 1], vec![1, 1, 0, 0]]);
    b.check(sources == expected, || {
        format!("critical pair sources {sources:?}, expected bbb and bbaa")
    });
    for pair in &report.pairs {
        let want: MWord = if pair.source == vec![1, 1, 1] {
            vec![0, 0, 1] // aab
        } else {
            vec![0, 0, 0, 0] // aaaa
        };
        b.check(pair.left_nf == want && pair.right_nf == want, || {
            format!(
                "critical pair from {:?} resolves to {:?} / {:?}",
                pair.source, pair.left_nf, pair.right_nf
            )
        });
    }
    let mut words = 0usize;
    for len in 0..=SWEEP_LENGTH_BOUND {
        for bits in 0..1u32 << len {
            let w: MWord = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
            words += 1;
            let nf = sys.normal_form(&w);
            b.check(
                sys.is_normal(&nf) && rewrite::in_normal_form_language(&nf),
                || format!("normal form {nf:?} of {w:?} outside a*(ba)*{{1,b}}"),
            );
            // The language is exactly the irreducible words.
            b.check(
                rewrite::in_normal_form_language(&w) == sys.is_normal(&w),
                || format!("language membership and irreducibility disagree on {w:?}"),
            );
        }
    }
    b.line(format!("words normalized: {words}"));
    b.finish()
}

/// `⟨a, b, c | cac = cbc⟩` with `a ↔ b`: the words `(ca)ⁿc` are fixed,
/// pairwise distinct and indecomposable for `n ≤ 6`, and the
/// indecomposable counts strictly increase with the length bound — the
/// fixed submonoid is not finitely generated.
pub fn exth(seed: u64, opts: &Options) -> Outcome {
    let mut b = Build::new("exth", seed, 30_000);
    let n_max = opts.n_max.unwrap_or(6) as usize;
    match presentations::exth_check(n_max) {
        Ok(r) => {
            b.check(r.words.len() == n_max, || {
                format!("{} witness words built, expected {n_max}", r.words.len())
            });
            b.check(r.all_fixed, || "some (ca)ⁿc is not fixed".to_string());
            b.check(r.all_distinct, || {
                "the (ca)ⁿc are not pairwise distinct".to_string()
            });
            b.check(r.all_indecomposable, || {
                "some (ca)ⁿc decomposes into shorter fixed words".to_string()
            });
            b.check(r.counts_strictly_increase, || {
                format!(
                    "indecomposable counts do not strictly increase: {:?}",
                    r.counts
                )
            });
            let &(bound, last) = r.counts.last().expect("n_max ≥ 1 gives counts");
            b.check(last >= n_max, || {
                format!("{last} indecomposables up to length {bound}, expected ≥ {n_max}")
            });
            b.line(format!(
                "indecomposable counts by length bound: {:?}",
                r.counts
            ));
        }
        Err(e) => b.check(false, || format!("fixed-point analysis failed: {e}")),
    }
    b.finish()
}

/// Divisor pairs `(m, n)` with `m < n ≤ window`.
fn divisor_pairs(window: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=window {
        for m in 1..n {
            if n % m == 0 {
                out.push((m, n));
            }
        }
    }
    out
}

/// The periodic-point machinery over every criterion instance of the
/// fixed-point sweep: exact orbit periods agree with direct power
/// iteration, fixed sets are monotone along divisibility, the periodic
/// set is the union of the small fixed sets, and `xφ^R ≡ x` holds for the
/// reported period bound `R`.
pub fn per_machinery(seed: u64, opts: &Options) -> Outcome {
    let mut b = Build::new("per-machinery", seed, 120_000);
    let cap = caps::search_cap();
    let letters = opts.letters.unwrap_or(3).max(2);
    let image_len = opts.image_len.unwrap_or(2);
    let pairs = divisor_pairs(SWEEP_WINDOW);
    let mut long_periods = 0usize;
    let mut valid_total = 0usize;
    for k in 2..=letters {
        let pres = one_relator_presentations(k);
        let tuples = candidate_image_tuples(k, image_len);
        for p in &pres {
            let table = match p.canonical_table_up_to(SWEEP_LENGTH_BOUND, cap) {
                Ok(t) => t,
                Err(e) => {
                    b.check(false, || format!("table for {}: {e}", p.to_text()));
                    continue;
                }
            };
            for tuple in &tuples {
                let Ok(phi) = p.validate_endo(tuple.clone()) else {
                    continue;
                };
                valid_total += 1;
                let key = || describe(p, &phi);
                let direct = p.power_fixes_direct_with_table(&phi, SWEEP_WINDOW, &table);
                let report = match p.per_with_table(&phi, &table, SWEEP_WINDOW, cap) {
                    Ok(r) => r,
                    Err(e) => {
                        b.check(false, || {
                            format!("{}: periodic analysis failed: {e}", key())
                        });
                        continue;
                    }
                };
                b.check(report.undetermined.is_empty(), || {
                    format!(
                        "{}: {} unresolved orbits, first {:?}",
                        key(),
                        report.undetermined.len(),
                        report.undetermined.first()
                    )
                });
                if !report.undetermined.is_empty() {
                    continue;
                }
                // Orbit-derived fixed sets of each power must equal direct
                // iteration, in table order.
                for n in 1..=SWEEP_WINDOW {
                    let from_orbits: Vec<&MWord> = report
                        .per
                        .iter()
                        .zip(&report.periods)
                        .filter(|&(_, &p)| (n as u64).is_multiple_of(p))
                        .map(|(w, _)| w)
                        .collect();
                    b.check(
                        from_orbits.len() == direct[n - 1].len()
                            && from_orbits
                                .iter()
                                .zip(&direct[n - 1])
                                .all(|(a, b)| **a == *b),
                        || {
                            format!(
                                "{}: Fix(φ^{n}) disagrees: {} by periods vs {} direct",
                                key(),
                                from_orbits.len(),
                                direct[n - 1].len()
                            )
                        },
                    );
                }
                // Monotonicity along divisibility, on the direct sets.
                for &(m, n) in &pairs {
                    let larger: HashSet<&MWord> = direct[n - 1].iter().collect();
                    b.check(direct[m - 1].iter().all(|w| larger.contains(w)), || {
                        format!("{}: Fix(φ^{m}) ⊄ Fix(φ^{n})", key())
                    });
                }
                // The union of the windowed fixed sets is exactly the
                // periodic words with period ≤ window.
                let union: BTreeSet<&MWord> = direct.iter().flatten().collect();
                let small: BTreeSet<&MWord> = report
                    .per
                    .iter()
                    .zip(&report.periods)
                    .filter(|&(_, &p)| p <= SWEEP_WINDOW as u64)
                    .map(|(w, _)| w)
                    .collect();
                b.check(union == small, || {
                    format!(
                        "{}: ⋃ Fix(φⁿ) has {} words, periods ≤ {} give {}",
                        key(),
                        union.len(),
                        SWEEP_WINDOW,
                        small.len()
                    )
                });
                let exceptional = report
                    .periods
                    .iter()
                    .filter(|&&p| p > SWEEP_WINDOW as u64)
                    .count();
                if exceptional == 0 {
                    b.check(report.per.len() == union.len(), || {
                        format!(
                            "{}: periodic set has {} words but ⋃ Fix(φⁿ) has {}",
                            key(),
                            report.per.len(),
                            union.len()
                        )
                    });
                } else {
                    long_periods += 1;
                }
                b.check(report.stationary_at.is_some(), || {
                    format!("{}: no stabilization exponent found", key())
                });
                match p.period_check(&phi, &report, cap) {
                    Ok((true, None)) => {}
                    Ok((_, witness)) => b.check(false, || {
                        format!(
                            "{}: xφ^{} ≢ x for x = {:?}",
                            key(),
                            report.period_bound,
                            witness.map(|w| p.print_mword(&w))
                        )
                    }),
                    Err(e) => b.check(false, || format!("{}: period check failed: {e}", key())),
                }
            }
        }
    }
    b.line(format!("valid endomorphisms checked: {valid_total}"));
    b.line(format!(
        "instances with some period beyond the window: {long_periods}"
    ));
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_and_tuple_counts() {
        assert_eq!(one_relator_presentations(2).len(), 10);
        assert_eq!(one_relator_presentations(3).len(), 45);
        assert_eq!(candidate_image_tuples(2, 2).len(), 49);
        assert_eq!(candidate_image_tuples(3, 2).len(), 2197);
    }

    #[test]
    fn divisor_pairs_in_window() {
        assert_eq!(
            divisor_pairs(6),
            vec![
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 4),
                (1, 5),
                (1, 6),
                (2, 6),
                (3, 6)
            ]
        );
    }
}
