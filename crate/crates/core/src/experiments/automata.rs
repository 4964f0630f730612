//! Free-group sweeps: subgroup rank against the Nielsen oracle, the rank
//! bound read off automaton data, and fold-order independence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracles::nielsen;
use crate::stallings::{Automaton, StallingsGraph};
use crate::words::{Alphabet, Letter, Word};

use super::{mix, Build, Options, Outcome};

/// The four involutive letters over `{a, b}`, in letter order.
fn pm_letters() -> Vec<Letter> {
    (0..2u32)
        .flat_map(|b| [Letter::plain(b), Letter::plain(b).inverse()])
        .collect()
}

/// All nonempty reduced words over `{a, b}±` of length ≤ `max_len`, in
/// shortlex order (layer by layer, lexicographic within a layer).
fn reduced_words(max_len: usize) -> Vec<Word> {
    let letters = pm_letters();
    let mut all = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut ls = w.letters().to_vec();
                ls.push(l);
                next.push(Word::from_letters(ls));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Every subgroup given by ≤ 3 distinct reduced words of length ≤ 5 over
/// two letters, restricted to total generator length ≤ 7: graph rank
/// (`|E|/2 − |Q| + 1` after folding and pruning) must equal the rank found
/// by Nielsen reduction.
pub fn stallings_rank(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("stallings-rank", seed, 60_000);
    let ab = Alphabet::latin(2);
    let words = reduced_words(5);
    let budget = 7usize;
    // `words` is length-sorted, so each inner loop can stop at the first
    // overflow of the length budget.
    let mut sets: Vec<Vec<Word>> = Vec::new();
    for i in 0..words.len() {
        if words[i].len() > budget {
            break;
        }
        sets.push(vec![words[i].clone()]);
        for j in i + 1..words.len() {
            if words[i].len() + words[j].len() > budget {
                break;
            }
            sets.push(vec![words[i].clone(), words[j].clone()]);
            for k in j + 1..words.len() {
                if words[i].len() + words[j].len() + words[k].len() > budget {
                    break;
                }
                sets.push(vec![words[i].clone(), words[j].clone(), words[k].clone()]);
            }
        }
    }
    b.line(format!("generator pool: {} reduced words", words.len()));
    b.line(format!("subgroup instances: {}", sets.len()));
    for set in &sets {
        let got = StallingsGraph::subgroup(set).rank();
        let (want, _) = nielsen::rank(set);
        b.check(got == want, || {
            let gens = set
                .iter()
                .map(|w| ab.print_word(w))
                .collect::<Vec<_>>()
                .join(", ");
            format!("⟨{gens}⟩: graph rank {got} ≠ Nielsen rank {want}")
        });
    }
    b.finish()
}

/// One random automaton over `{a, b}±` with ≤ 6 vertices; edges, base and
/// terminals drawn from `rng`.
fn random_automaton(rng: &mut ChaCha8Rng) -> Automaton {
    let letters = pm_letters();
    let n = rng.gen_range(1..=6);
    let e = rng.gen_range(0..=2 * n + 2);
    let edges: Vec<(usize, Letter, usize)> = (0..e)
        .map(|_| {
            (
                rng.gen_range(0..n),
                letters[rng.gen_range(0..letters.len())],
                rng.gen_range(0..n),
            )
        })
        .collect();
    let mut terminals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if terminals.is_empty() {
        terminals.push(rng.gen_range(0..n));
    }
    Automaton::new(n, 0, terminals, edges).expect("generated vertices are in range")
}

/// 500 random trim automata with ≤ 6 vertices: the rank computed by the
/// full pipeline is bounded by `|E| − |Q| + |{q0} ∪ T|` of the trim part.
pub fn ragr_bound(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("ragr-bound", seed, 30_000);
    let mut found = 0usize;
    let mut attempt = 0u64;
    while found < 500 {
        attempt += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, &[2, attempt]));
        let a = random_automaton(&mut rng);
        let trimmed = a.trim();
        if !trimmed.has_successful_path() {
            continue;
        }
        found += 1;
        let bound = trimmed.ragr_bound();
        match trimmed.pipeline() {
            Ok(p) => {
                let rank = p.report.rank;
                b.check(rank <= bound, || {
                    format!("attempt {attempt}: rank {rank} > bound {bound} for {trimmed:?}")
                });
            }
            Err(e) => b.check(false, || format!("attempt {attempt}: pipeline failed: {e}")),
        }
    }
    b.line(format!("trim automata: {found} (from {attempt} drawn)"));
    b.finish()
}

/// One random dual automaton: a random spanning tree plus extra edges, all
/// inserted together with their reverses, so the result is connected.
fn random_dual_automaton(rng: &mut ChaCha8Rng) -> Automaton {
    let letters = pm_letters();
    let n = rng.gen_range(2..=7);
    let mut edges = Vec::new();
    let add = |edges: &mut Vec<(usize, Letter, usize)>, u: usize, l: Letter, v: usize| {
        edges.push((u, l, v));
        edges.push((v, l.inverse(), u));
    };
    for v in 1..n {
        let u = rng.gen_range(0..v);
        add(&mut edges, u, letters[rng.gen_range(0..letters.len())], v);
    }
    for _ in 0..rng.gen_range(0..=n) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        add(&mut edges, u, letters[rng.gen_range(0..letters.len())], v);
    }
    let mut terminals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    if terminals.is_empty() {
        terminals.push(0);
    }
    Automaton::new(n, 0, terminals, edges).expect("generated vertices are in range")
}

/// 100 random dual automata folded twice under different seeded worklist
/// orders: the two results must have identical canonical forms.
pub fn fold_order(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("fold-order", seed, 10_000);
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, &[3, i]));
        let a = random_dual_automaton(&mut rng);
        let f1 = a.fold_seeded(mix(seed, &[3, i, 1]));
        let f2 = a.fold_seeded(mix(seed, &[3, i, 2]));
        match (f1, f2) {
            (Ok(f1), Ok(f2)) => {
                let c1 = f1.canonical_form();
                let c2 = f2.canonical_form();
                match (c1, c2) {
                    (Ok(c1), Ok(c2)) => {
                        b.check(c1 == c2, || {
                            format!("instance {i}: fold orders disagree on {a:?}: {c1:?} vs {c2:?}")
                        });
                    }
                    (c1, c2) => b.check(false, || {
                        format!("instance {i}: canonical form failed: {c1:?} / {c2:?}")
                    }),
                }
            }
            (f1, f2) => b.check(false, || {
                format!("instance {i}: fold failed: {f1:?} / {f2:?}")
            }),
        }
    }
    b.line("dual automata: 100, two fold orders each".to_string());
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_counts_by_layer() {
        // 4 · 3^(k−1) words of length k.
        let words = reduced_words(5);
        assert_eq!(words.len(), 4 + 12 + 36 + 108 + 324);
        assert!(words.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert!(words.iter().all(|w| w.free_reduce() == *w));
    }
}
