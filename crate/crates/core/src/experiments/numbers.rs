//! Additive-closure sweeps: the `(d, p)` profile against the long-table
//! oracle, and the strictly ascending plane chain.

use crate::numeric::{self, NumericSemigroup};
use crate::oracles::segment;

use super::{Build, Options, Outcome};

/// Every generator set `⊆ {2, …, 12}` of size ≤ 3 (231 sets): the profile
/// from the windowed membership table must match the oracle computed from
/// a much longer table, and `⟨3, 5⟩` must come out as `(1, 8)`.
pub fn numeric_profile(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("numeric-profile", seed, 10_000);
    let pool: Vec<u64> = (2..=12).collect();
    let mut sets: Vec<Vec<u64>> = Vec::new();
    for i in 0..pool.len() {
        sets.push(vec![pool[i]]);
        for j in i + 1..pool.len() {
            sets.push(vec![pool[i], pool[j]]);
            for k in j + 1..pool.len() {
                sets.push(vec![pool[i], pool[j], pool[k]]);
            }
        }
    }
    b.line(format!("generator sets: {}", sets.len()));
    for gens in &sets {
        match NumericSemigroup::new(gens) {
            Ok(s) => {
                let got = s.profile();
                let want = segment::profile(gens);
                b.check(got == want, || {
                    format!("⟨{gens:?}⟩: profile {got:?} ≠ oracle {want:?}")
                });
            }
            Err(e) => b.check(false, || format!("⟨{gens:?}⟩: construction failed: {e}")),
        }
    }
    let frozen = NumericSemigroup::new(&[3, 5])
        .expect("valid generators")
        .profile();
    b.check(frozen == (1, 8), || {
        format!("⟨3, 5⟩: profile {frozen:?} ≠ (1, 8)")
    });
    b.finish()
}

/// The plane chain `S_n = ⟨(−2, 0), (2n − 1, 1)⟩` for `n ≤ 25`: each term
/// contains the one before, each step has the witness `(2n+1, 1)` new, and
/// the witness is also excluded from the final term.
pub fn notts(seed: u64, opts: &Options) -> Outcome {
    let mut b = Build::new("notts", seed, 5_000);
    let terms = opts.n_max.unwrap_or(25);
    let report = numeric::plane_chain_check(terms);
    b.line(format!("chain terms: {terms}"));
    b.check(report.ascending, || {
        format!("chain not ascending: {:?}", report.failures)
    });
    b.check(report.strictly, || {
        format!("chain not strictly ascending: {:?}", report.failures)
    });
    b.check(report.failures.is_empty(), || {
        format!("membership failures: {:?}", report.failures)
    });
    // The loop covers steps n → n+1 for n < terms; close the boundary by
    // excluding the final witness from the final term directly.
    let last = numeric::plane_chain_generators(terms);
    let witness = (2 * terms as i64 + 1, 1);
    let m = numeric::z2_member(&last, witness);
    b.check(m == numeric::Membership::NonMember, || {
        format!("final witness {witness:?} not excluded from term {terms}: {m:?}")
    });
    b.finish()
}
