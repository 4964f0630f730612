//! Completely simple and semilattice-of-groups sweeps: the quadratic rank
//! bound with its path-product cross-check, the two subsemigroup indices,
//! and the retraction inequality.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{CliffordElement, CliffordSemigroup, IndexValue};
use crate::groups::Group;
use crate::rees::{ReesElement, ReesSemigroup};
use crate::stallings::Automaton;

use super::{mix, Build, Options, Outcome};

/// Named groups of order ≤ `max_order`, for configurable sweeps.
fn group_pool(max_order: usize) -> Vec<(String, Group)> {
    let c = |n: usize| Group::cyclic(n);
    let prod = |a: &Group, b: &Group| a.direct_product(b);
    let mut pool: Vec<(String, Group)> = vec![
        ("C2".into(), c(2)),
        ("C3".into(), c(3)),
        ("C4".into(), c(4)),
        ("C2xC2".into(), prod(&c(2), &c(2))),
        ("C5".into(), c(5)),
        ("C6".into(), c(6)),
        (
            "S3".into(),
            Group::symmetric(3).expect("S3 is constructible"),
        ),
        ("C7".into(), c(7)),
        ("C8".into(), c(8)),
        ("C2xC4".into(), prod(&c(2), &c(4))),
        ("C2xC2xC2".into(), prod(&prod(&c(2), &c(2)), &c(2))),
        ("D4".into(), Group::dihedral(4)),
        ("C9".into(), c(9)),
        ("C3xC3".into(), prod(&c(3), &c(3))),
        ("C10".into(), c(10)),
        ("D5".into(), Group::dihedral(5)),
        ("C11".into(), c(11)),
        ("C12".into(), c(12)),
        ("C2xC6".into(), prod(&c(2), &c(6))),
        ("D6".into(), Group::dihedral(6)),
    ];
    pool.retain(|(_, g)| g.order() <= max_order);
    pool
}

/// The fixed list the default sweep runs over.
fn default_rees_groups() -> Vec<(String, Group)> {
    let c = |n: usize| Group::cyclic(n);
    vec![
        ("C2".into(), c(2)),
        ("C3".into(), c(3)),
        ("C4".into(), c(4)),
        ("C2xC2".into(), c(2).direct_product(&c(2))),
        (
            "S3".into(),
            Group::symmetric(3).expect("S3 is constructible"),
        ),
        ("C6".into(), c(6)),
    ]
}

/// Group elements labelling successful paths: breadth-first closure over
/// (state, accumulated product) pairs, collecting the products that reach
/// a terminal state. Exact — no path-length truncation.
fn automaton_products(group: &Group, a: &Automaton) -> BTreeSet<usize> {
    let mut out_edges: Vec<Vec<(u32, usize)>> = vec![Vec::new(); a.vertex_count()];
    for &(u, l, v) in a.edges() {
        debug_assert!(!l.inverted);
        out_edges[u].push((l.base, v));
    }
    let start = (a.base(), group.identity());
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut products = BTreeSet::new();
    while let Some((s, g)) = queue.pop_front() {
        if a.terminals().contains(&s) {
            products.insert(g);
        }
        for &(lab, v) in &out_edges[s] {
            let next = (v, group.mul(g, lab as usize));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    products
}

/// Per group × index shape (|I|, |Λ| ≤ 2) × 20 seeded sandwich matrices ×
/// 6 generator draws: for every H-class of the generated subalgebra `T`,
/// the group rank of the component is at most `rk(T)² + 1` (and at most
/// the bound read from the witness automaton), and the path products of
/// the component automaton are exactly the component image.
pub fn rees_bound(seed: u64, opts: &Options) -> Outcome {
    let mut b = Build::new("rees-bound", seed, 120_000);
    let groups = match opts.group_max {
        Some(m) => group_pool(m),
        None => default_rees_groups(),
    };
    let max_gens = opts.gens.unwrap_or(2).max(1);
    let shapes = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let mut draws = 0usize;
    for (gi, (name, group)) in groups.iter().enumerate() {
        for (si, &(rows, cols)) in shapes.iter().enumerate() {
            for mi in 0..20u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, &[6, gi as u64, si as u64, mi]));
                let p: Vec<Vec<usize>> = (0..cols)
                    .map(|_| (0..rows).map(|_| rng.gen_range(0..group.order())).collect())
                    .collect();
                let s = ReesSemigroup::new(group.clone(), rows, cols, p.clone())
                    .expect("matrix dimensions match");
                for d in 0..6usize {
                    let n_gens = d % max_gens + 1;
                    let gens: Vec<ReesElement> = (0..n_gens)
                        .map(|_| {
                            (
                                rng.gen_range(0..rows),
                                rng.gen_range(0..group.order()),
                                rng.gen_range(0..cols),
                            )
                        })
                        .collect();
                    draws += 1;
                    let key = || format!("{name} {rows}×{cols} p={p:?} gens={gens:?}");
                    let sub = match s.subalgebra(&gens) {
                        Ok(sub) => sub,
                        Err(e) => {
                            b.check(false, || format!("{}: closure failed: {e}", key()));
                            continue;
                        }
                    };
                    let (rk_cs, witness) = match s.cs_rank(&sub) {
                        Ok(r) => r,
                        Err(e) => {
                            b.check(false, || format!("{}: rank search failed: {e}", key()));
                            continue;
                        }
                    };
                    let quadratic = rk_cs * rk_cs + 1;
                    for &i in &sub.rows {
                        for &l in &sub.cols {
                            let component = match s.component_subgroup(&sub, i, l) {
                                Ok(c) => c,
                                Err(e) => {
                                    b.check(false, || {
                                        format!("{}: component ({i},{l}) failed: {e}", key())
                                    });
                                    continue;
                                }
                            };
                            let rk_g = match group.subset_rank(&component) {
                                Ok(r) => r,
                                Err(e) => {
                                    b.check(false, || {
                                        format!("{}: group rank at ({i},{l}) failed: {e}", key())
                                    });
                                    continue;
                                }
                            };
                            b.check(rk_g <= quadratic, || {
                                format!(
                                    "{}: rank {rk_g} of component ({i},{l}) exceeds {quadratic}",
                                    key()
                                )
                            });
                            // Both the witness automaton (whose size gives the
                            // bound) and the raw-generator automaton must
                            // recognize exactly the component.
                            for (tag, set) in [("witness", &witness), ("generators", &gens)] {
                                match s.group_automaton(set, i, l) {
                                    Ok((_, aut)) => {
                                        let products = automaton_products(group, &aut);
                                        b.check(products == component, || {
                                            format!(
                                                "{}: {tag} path products {products:?} ≠ component \
                                                 {component:?} at ({i},{l})",
                                                key()
                                            )
                                        });
                                        if tag == "witness" {
                                            let bound = aut.ragr_bound();
                                            b.check(rk_g <= bound, || {
                                                format!(
                                                    "{}: rank {rk_g} exceeds automaton bound \
                                                     {bound} at ({i},{l})",
                                                    key()
                                                )
                                            });
                                        }
                                    }
                                    Err(e) => b.check(false, || {
                                        format!("{}: {tag} automaton failed: {e}", key())
                                    }),
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    b.line(format!(
        "groups: {}",
        groups
            .iter()
            .map(|(n, _)| n.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    b.line(format!("generator draws: {draws}"));
    b.finish()
}

/// Abelian groups of order ≤ 8 for the single-level instances, where the
/// Green index provably equals the Lagrange index.
fn abelian_pool() -> Vec<Group> {
    let c = |n: usize| Group::cyclic(n);
    vec![
        c(1),
        c(2),
        c(3),
        c(4),
        c(2).direct_product(&c(2)),
        c(5),
        c(6),
        c(7),
        c(8),
        c(2).direct_product(&c(4)),
        c(2).direct_product(&c(2)).direct_product(&c(2)),
    ]
}

fn full_pool() -> Vec<Group> {
    let mut pool = abelian_pool();
    pool.push(Group::symmetric(3).expect("S3 is constructible"));
    pool.push(Group::dihedral(4));
    pool
}

/// A random homomorphism `upper → lower`, drawn uniformly from the full
/// (finite) list.
fn random_hom(rng: &mut ChaCha8Rng, upper: &Group, lower: &Group) -> Vec<usize> {
    let all = upper.all_homomorphisms(lower);
    all[rng.gen_range(0..all.len())].clone()
}

/// One seeded strong semilattice of groups with 2 or 3 levels plus a
/// subalgebra generated by one or two random elements.
fn clifford_case(seed: u64, i: u64) -> (CliffordSemigroup, BTreeSet<CliffordElement>) {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, &[7, i]));
    let pool = full_pool();
    let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
    let s = match i % 4 {
        // Two-level chain 1 > 0.
        0 | 2 => {
            let meet = vec![vec![0, 0], vec![0, 1]];
            let groups = vec![pick(&mut rng), pick(&mut rng)];
            let link = random_hom(&mut rng, &groups[1], &groups[0]);
            CliffordSemigroup::new(meet, groups, &[(1, 0, link)])
        }
        // Three-level chain 2 > 1 > 0; the long link is the composite.
        1 => {
            let meet = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
            let groups = vec![pick(&mut rng), pick(&mut rng), pick(&mut rng)];
            let hi = random_hom(&mut rng, &groups[2], &groups[1]);
            let lo = random_hom(&mut rng, &groups[1], &groups[0]);
            let composite: Vec<usize> = hi.iter().map(|&g| lo[g]).collect();
            CliffordSemigroup::new(meet, groups, &[(2, 1, hi), (1, 0, lo), (2, 0, composite)])
        }
        // Vee: incomparable 1, 2 over bottom 0.
        _ => {
            let meet = vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
            let groups = vec![pick(&mut rng), pick(&mut rng), pick(&mut rng)];
            let left = random_hom(&mut rng, &groups[1], &groups[0]);
            let right = random_hom(&mut rng, &groups[2], &groups[0]);
            CliffordSemigroup::new(meet, groups, &[(1, 0, left), (2, 0, right)])
        }
    }
    .expect("generated semilattice data is structurally valid");
    let n_gens = rng.gen_range(1..=2);
    let gens: Vec<CliffordElement> = (0..n_gens)
        .map(|_| {
            let level = rng.gen_range(0..s.level_count());
            (level, rng.gen_range(0..s.group_at(level).order()))
        })
        .collect();
    let t = s
        .closure(&gens)
        .expect("generators are nonempty and in range");
    (s, t)
}

/// One single-level instance over an abelian group, where Green and
/// Lagrange indices must coincide exactly.
fn single_group_case(seed: u64, i: u64) -> (CliffordSemigroup, BTreeSet<CliffordElement>) {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, &[8, i]));
    let pool = abelian_pool();
    let g = pool[rng.gen_range(0..pool.len())].clone();
    let order = g.order();
    let s = CliffordSemigroup::new(vec![vec![0]], vec![g], &[])
        .expect("one-level semilattice is trivially valid");
    let n_gens = rng.gen_range(1..=2);
    let gens: Vec<CliffordElement> = (0..n_gens).map(|_| (0, rng.gen_range(0..order))).collect();
    let t = s
        .closure(&gens)
        .expect("generators are nonempty and in range");
    (s, t)
}

const CLIFFORD_CASES: u64 = 50;
const SINGLE_GROUP_CASES: u64 = 20;

/// 50 semilattice-of-groups instances: the Green index never exceeds the
/// number of relative H-classes; 20 single-group instances: both indices
/// equal the Lagrange index of the subgroup.
pub fn clifford_index(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("clifford-index", seed, 30_000);
    for i in 0..CLIFFORD_CASES {
        let (s, t) = clifford_case(seed, i);
        let classes = s.relative_h_classes(&t).len();
        match s.index_report(&t) {
            Ok(report) => {
                let green = report.green.expect("report fills the Green index");
                b.check(green <= classes, || {
                    format!("instance {i}: green index {green} > {classes} H^T-classes")
                });
            }
            Err(e) => b.check(false, || format!("instance {i}: index report failed: {e}")),
        }
    }
    for i in 0..SINGLE_GROUP_CASES {
        let (s, t) = single_group_case(seed, i);
        let lagrange = s.group_at(0).order() / t.len();
        match s.index_report(&t) {
            Ok(report) => {
                let green = report.green.expect("report fills the Green index");
                b.check(
                    report.sup == IndexValue::Finite(lagrange) && green == lagrange,
                    || {
                        format!(
                            "single-group instance {i}: sup {:?}, green {green}, lagrange \
                             {lagrange}",
                            report.sup
                        )
                    },
                );
            }
            Err(e) => b.check(false, || {
                format!("single-group instance {i}: index report failed: {e}")
            }),
        }
    }
    b.line(format!(
        "instances: {CLIFFORD_CASES} semilattices + {SINGLE_GROUP_CASES} single groups"
    ));
    b.finish()
}

/// On the same instances: at every level the subalgebra touches, the
/// retraction `t ↦ te` is a homomorphism fixing `T ∩ H` pointwise, the
/// J-order test agrees with the level test, and the group rank of `T ∩ H`
/// is at most the (2,1)-rank of `T`.
pub fn fug_retraction(seed: u64, _opts: &Options) -> Outcome {
    let mut b = Build::new("fug-retraction", seed, 30_000);
    let mut cases: Vec<(u64, CliffordSemigroup, BTreeSet<CliffordElement>)> = Vec::new();
    for i in 0..CLIFFORD_CASES {
        let (s, t) = clifford_case(seed, i);
        cases.push((i, s, t));
    }
    for i in 0..SINGLE_GROUP_CASES {
        let (s, t) = single_group_case(seed, i);
        cases.push((CLIFFORD_CASES + i, s, t));
    }
    let mut levels_checked = 0usize;
    for (i, s, t) in &cases {
        for level in 0..s.level_count() {
            if !t.iter().any(|&(a, _)| a == level) {
                continue;
            }
            levels_checked += 1;
            match s.retraction_check(t, level) {
                Ok(r) => {
                    b.check(
                        r.holds
                            && r.psi_is_homomorphism
                            && r.psi_fixes_intersection
                            && r.j_test_agrees,
                        || format!("instance {i} level {level}: {r:?}"),
                    );
                }
                Err(e) => b.check(false, || {
                    format!("instance {i} level {level}: retraction check failed: {e}")
                }),
            }
        }
    }
    b.line(format!(
        "instances: {}, levels with nonempty intersection: {levels_checked}",
        cases.len()
    ));
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_products_follow_edges() {
        // Two-state loop over C3: products are exactly the powers the
        // paths can spell.
        let c3 = Group::cyclic(3);
        let s = ReesSemigroup::new(c3.clone(), 1, 1, vec![vec![0]]).unwrap();
        let gens = [(0, 1, 0)];
        let sub = s.subalgebra(&gens).unwrap();
        let component = s.component_subgroup(&sub, 0, 0).unwrap();
        let (_, aut) = s.group_automaton(&gens, 0, 0).unwrap();
        assert_eq!(automaton_products(&c3, &aut), component);
        assert_eq!(component.len(), 3);
    }

    #[test]
    fn case_generation_is_deterministic() {
        let (s1, t1) = clifford_case(11, 3);
        let (s2, t2) = clifford_case(11, 3);
        assert_eq!(t1, t2);
        assert_eq!(s1.to_json().meet, s2.to_json().meet);
    }
}
