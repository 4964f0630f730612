//! Clifford semigroups as strong semilattices of finite groups: validated
//! linking homomorphisms, multiplication through the meet, subalgebra
//! closure, the index report with the `[G : ∅] = |G|` convention, the Green
//! index via relative Green's relations, and the retraction onto a maximal
//! subgroup with its rank inequality.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps;
use crate::groups::{Group, GroupError, GroupJson};
use crate::util::any_combination;

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("meet table must be a square over the levels")]
    BadMeetTable,
    #[error("meet is not a semilattice operation: {0}")]
    NotASemilattice(String),
    #[error("missing link from level {0} to level {1}")]
    MissingLink(usize, usize),
    #[error("link {0} → {1} is not defined for comparable levels")]
    SpuriousLink(usize, usize),
    #[error("link {0} → {1} has the wrong length or range")]
    BadLinkShape(usize, usize),
    #[error("link {0} → {1} is not a homomorphism")]
    LinkNotHom(usize, usize),
    #[error("links {0} → {1} → {2} do not compose to the direct link")]
    LinksDontCompose(usize, usize, usize),
    #[error("element ({0}, {1}) out of range")]
    ElementOutOfRange(usize, usize),
    #[error("set is not closed under multiplication and inversion")]
    NotASubalgebra,
    #[error("at least one element is required")]
    EmptySet,
    #[error("T ∩ H is empty at level {0}")]
    EmptyIntersection(usize),
    #[error("no generating subset of size ≤ {cap} found; raise the cap to search further")]
    RankSearchExhausted { cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// An element: a semilattice level and a group element at that level.
pub type CliffordElement = (usize, usize);

#[derive(Clone, Debug)]
pub struct CliffordSemigroup {
    meet: Vec<Vec<usize>>,
    groups: Vec<Group>,
    /// `links[(α, β)]` for α ≥ β, including the identity at α = β.
    links: HashMap<(usize, usize), Vec<usize>>,
    offsets: Vec<usize>,
    size: usize,
}

/// Wire form; links are given only for strictly comparable pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CliffordJson {
    pub meet: Vec<Vec<usize>>,
    pub groups: Vec<GroupJson>,
    pub links: Vec<LinkJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkJson {
    pub from: usize,
    pub to: usize,
    pub map: Vec<usize>,
}

/// Index report: per-H-class indices, their supremum, and optionally the
/// Green index. All groups here are finite, so the infinite variant never
/// arises in practice; it exists so the report format is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IndexValue {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    /// (level, [H_level : H_level ∩ T]) with [G : ∅] = |G|.
    pub per_class: Vec<(usize, IndexValue)>,
    pub sup: IndexValue,
    pub green: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RetractionReport {
    pub level: usize,
    /// Minimum group-generating size of T ∩ H.
    pub rk_g: usize,
    /// Minimum (2,1)-generating size of T.
    pub rk_c: usize,
    pub holds: bool,
    /// ψ: t ↦ te is a homomorphism T′ → T ∩ H fixing T ∩ H pointwise.
    pub psi_is_homomorphism: bool,
    pub psi_fixes_intersection: bool,
    /// T′ computed as {t : te ∈ H} agrees with {t : te ≮_J e} where the
    /// J-order is derived from multiplication alone.
    pub j_test_agrees: bool,
}

impl CliffordSemigroup {
    pub fn new(
        meet: Vec<Vec<usize>>,
        groups: Vec<Group>,
        given_links: &[(usize, usize, Vec<usize>)],
    ) -> Result<CliffordSemigroup, CliffordError> {
        let k = meet.len();
        if k == 0
            || k != groups.len()
            || meet
                .iter()
                .any(|r| r.len() != k || r.iter().any(|&e| e >= k))
        {
            return Err(CliffordError::BadMeetTable);
        }
        for a in 0..k {
            if meet[a][a] != a {
                return Err(CliffordError::NotASemilattice(format!("{a} ∧ {a} ≠ {a}")));
            }
            for b in 0..k {
                if meet[a][b] != meet[b][a] {
                    return Err(CliffordError::NotASemilattice(format!(
                        "{a} ∧ {b} ≠ {b} ∧ {a}"
                    )));
                }
                for c in 0..k {
                    if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                        return Err(CliffordError::NotASemilattice(format!(
                            "({a} ∧ {b}) ∧ {c} ≠ {a} ∧ ({b} ∧ {c})"
                        )));
                    }
                }
            }
        }
        let below = |a: usize, b: usize| meet[a][b] == b; // b ≤ a
        let mut links: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (a, g) in groups.iter().enumerate() {
            links.insert((a, a), (0..g.order()).collect());
        }
        for (from, to, map) in given_links {
            let (a, b) = (*from, *to);
            if a >= k || b >= k || a == b || !below(a, b) {
                return Err(CliffordError::SpuriousLink(a, b));
            }
            if map.len() != groups[a].order() || map.iter().any(|&y| y >= groups[b].order()) {
                return Err(CliffordError::BadLinkShape(a, b));
            }
            links.insert((a, b), map.clone());
        }
        // Every strictly comparable pair needs a link, and it must be a
        // homomorphism.
        for a in 0..k {
            for b in 0..k {
                if a != b && below(a, b) {
                    let map = links.get(&(a, b)).ok_or(CliffordError::MissingLink(a, b))?;
                    if !groups[a].is_homomorphism(&groups[b], map) {
                        return Err(CliffordError::LinkNotHom(a, b));
                    }
                }
            }
        }
        // Composition law over all chains a ≥ b ≥ c.
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if below(a, b) && below(b, c) {
                        let ab = &links[&(a, b)];
                        let bc = &links[&(b, c)];
                        let ac = &links[&(a, c)];
                        if (0..groups[a].order()).any(|g| bc[ab[g]] != ac[g]) {
                            return Err(CliffordError::LinksDontCompose(a, b, c));
                        }
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(k);
        let mut size = 0;
        for g in &groups {
            offsets.push(size);
            size += g.order();
        }
        Ok(CliffordSemigroup {
            meet,
            groups,
            links,
            offsets,
            size,
        })
    }

    pub fn from_json(json: &CliffordJson) -> Result<CliffordSemigroup, CliffordError> {
        let groups = json
            .groups
            .iter()
            .map(Group::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let links: Vec<(usize, usize, Vec<usize>)> = json
            .links
            .iter()
            .map(|l| (l.from, l.to, l.map.clone()))
            .collect();
        CliffordSemigroup::new(json.meet.clone(), groups, &links)
    }

    pub fn to_json(&self) -> CliffordJson {
        let mut links: Vec<LinkJson> = self
            .links
            .iter()
            .filter(|((a, b), _)| a != b)
            .map(|(&(from, to), map)| LinkJson {
                from,
                to,
                map: map.clone(),
            })
            .collect();
        links.sort_by_key(|l| (l.from, l.to));
        CliffordJson {
            meet: self.meet.clone(),
            groups: self.groups.iter().map(Group::to_json).collect(),
            links,
        }
    }

    pub fn level_count(&self) -> usize {
        self.meet.len()
    }

    pub fn group_at(&self, level: usize) -> &Group {
        &self.groups[level]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    /// b ≤ a in the semilattice order.
    pub fn level_below(&self, b: usize, a: usize) -> bool {
        self.meet[a][b] == b
    }

    pub fn link(&self, from: usize, to: usize, g: usize) -> usize {
        self.links[&(from, to)][g]
    }

    pub fn element_count(&self) -> usize {
        self.size
    }

    pub fn check_element(&self, (a, g): CliffordElement) -> Result<(), CliffordError> {
        if a < self.groups.len() && g < self.groups[a].order() {
            Ok(())
        } else {
            Err(CliffordError::ElementOutOfRange(a, g))
        }
    }

    pub fn all_elements(&self) -> Vec<CliffordElement> {
        (0..self.groups.len())
            .flat_map(|a| (0..self.groups[a].order()).map(move |g| (a, g)))
            .collect()
    }

    pub fn index(&self, (a, g): CliffordElement) -> usize {
        self.offsets[a] + g
    }

    pub fn element(&self, idx: usize) -> CliffordElement {
        let a = match self.offsets.binary_search(&idx) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        (a, idx - self.offsets[a])
    }

    pub fn mul(&self, (a, g): CliffordElement, (b, h): CliffordElement) -> CliffordElement {
        let d = self.meet[a][b];
        let gd = self.link(a, d, g);
        let hd = self.link(b, d, h);
        (d, self.groups[d].mul(gd, hd))
    }

    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        self.index(self.mul(self.element(x), self.element(y)))
    }

    /// Group inverse within the element's own H-class.
    pub fn unary(&self, (a, g): CliffordElement) -> CliffordElement {
        (a, self.groups[a].inv(g))
    }

    pub fn idempotent(&self, level: usize) -> CliffordElement {
        (level, self.groups[level].identity())
    }

    pub fn is_idempotent(&self, x: CliffordElement) -> bool {
        self.mul(x, x) == x
    }

    /// Closure of a nonempty set under multiplication and inversion.
    pub fn closure(
        &self,
        seed: &[CliffordElement],
    ) -> Result<BTreeSet<CliffordElement>, CliffordError> {
        if seed.is_empty() {
            return Err(CliffordError::EmptySet);
        }
        for &x in seed {
            self.check_element(x)?;
        }
        let mut set: BTreeSet<CliffordElement> = seed.iter().copied().collect();
        let mut frontier: Vec<CliffordElement> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let inv = self.unary(x);
            if set.insert(inv) {
                frontier.push(inv);
            }
            let known: Vec<CliffordElement> = set.iter().copied().collect();
            for y in known {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn is_subalgebra(&self, t: &BTreeSet<CliffordElement>) -> bool {
        !t.is_empty()
            && t.iter().all(|&x| {
                t.contains(&self.unary(x)) && t.iter().all(|&y| t.contains(&self.mul(x, y)))
            })
    }

    /// `[S : T] = sup [H_α : T ∩ H_α]`, with empty intersections
    /// contributing the full group order.
    pub fn index_of(&self, t: &BTreeSet<CliffordElement>) -> Result<IndexReport, CliffordError> {
        if !self.is_subalgebra(t) {
            return Err(CliffordError::NotASubalgebra);
        }
        let mut per_class = Vec::new();
        let mut sup = 0usize;
        for a in 0..self.groups.len() {
            let inter: BTreeSet<usize> = t
                .iter()
                .filter(|&&(b, _)| b == a)
                .map(|&(_, g)| g)
                .collect();
            let idx = if inter.is_empty() {
                self.groups[a].order()
            } else {
                // T ∩ H is a subgroup, so this is a Lagrange index.
                debug_assert_eq!(self.groups[a].order() % inter.len(), 0);
                self.groups[a].order() / inter.len()
            };
            sup = sup.max(idx);
            per_class.push((a, IndexValue::Finite(idx)));
        }
        Ok(IndexReport {
            per_class,
            sup: IndexValue::Finite(sup),
            green: None,
        })
    }

    /// Partition of all elements by the relative Green relation `H^T`:
    /// `a ~ b` iff `T¹a = T¹b` and `aT¹ = bT¹` as sets.
    pub fn relative_h_classes(&self, t: &BTreeSet<CliffordElement>) -> Vec<Vec<CliffordElement>> {
        let key = |x: CliffordElement| {
            let mut left: BTreeSet<CliffordElement> = BTreeSet::from([x]);
            let mut right: BTreeSet<CliffordElement> = BTreeSet::from([x]);
            for &u in t {
                left.insert(self.mul(u, x));
                right.insert(self.mul(x, u));
            }
            (left, right)
        };
        let mut classes: BTreeMap<_, Vec<CliffordElement>> = BTreeMap::new();
        for x in self.all_elements() {
            classes.entry(key(x)).or_default().push(x);
        }
        classes.into_values().collect()
    }

    /// Green index: one plus the number of `H^T`-classes contained in
    /// `S ∖ T`. Defined for any nonempty subsemigroup.
    pub fn green_index(&self, t: &BTreeSet<CliffordElement>) -> Result<usize, CliffordError> {
        if t.is_empty() {
            return Err(CliffordError::EmptySet);
        }
        let outside = self
            .relative_h_classes(t)
            .into_iter()
            .filter(|class| class.iter().all(|x| !t.contains(x)))
            .count();
        Ok(outside + 1)
    }

    /// Index report with the Green index filled in.
    pub fn index_report(
        &self,
        t: &BTreeSet<CliffordElement>,
    ) -> Result<IndexReport, CliffordError> {
        let mut report = self.index_of(t)?;
        report.green = Some(self.green_index(t)?);
        Ok(report)
    }

    /// Minimum size of a subset of `t` that regenerates it under
    /// multiplication and inversion.
    pub fn rank_of_subalgebra(
        &self,
        t: &BTreeSet<CliffordElement>,
    ) -> Result<usize, CliffordError> {
        if !self.is_subalgebra(t) {
            return Err(CliffordError::NotASubalgebra);
        }
        let pool: Vec<CliffordElement> = t.iter().copied().collect();
        // A single idempotent is its own closure.
        if pool.len() == 1 {
            return Ok(1);
        }
        let cap = caps::DEFAULT_CS_SUBSET_CAP.max(4);
        for k in 1..=cap.min(pool.len()) {
            let found = any_combination(pool.len(), k, |picked| {
                let seed: Vec<CliffordElement> = picked.iter().map(|&i| pool[i]).collect();
                self.closure(&seed).expect("seed is nonempty and in range") == *t
            });
            if found {
                return Ok(k);
            }
        }
        Err(CliffordError::RankSearchExhausted { cap })
    }

    /// J-order from multiplication alone: `x ≤_J y` iff `x ∈ S¹yS¹`.
    pub fn j_below(&self, x: CliffordElement, y: CliffordElement) -> bool {
        if x == y {
            return true;
        }
        let all = self.all_elements();
        let mut reach: BTreeSet<CliffordElement> = BTreeSet::from([y]);
        for &u in &all {
            reach.insert(self.mul(u, y));
            reach.insert(self.mul(y, u));
            for &v in &all {
                reach.insert(self.mul(self.mul(u, y), v));
            }
        }
        reach.contains(&x)
    }

    /// The retraction ψ: t ↦ t·e onto `T ∩ H` for `H` the maximal subgroup
    /// at `level`, together with both rank values and the inequality
    /// verdict.
    pub fn retraction_check(
        &self,
        t: &BTreeSet<CliffordElement>,
        level: usize,
    ) -> Result<RetractionReport, CliffordError> {
        if !self.is_subalgebra(t) {
            return Err(CliffordError::NotASubalgebra);
        }
        let e = self.idempotent(level);
        let inter: BTreeSet<CliffordElement> =
            t.iter().copied().filter(|&(a, _)| a == level).collect();
        if inter.is_empty() {
            return Err(CliffordError::EmptyIntersection(level));
        }
        let t_prime: Vec<CliffordElement> = t
            .iter()
            .copied()
            .filter(|&x| self.mul(x, e).0 == level)
            .collect();
        // Cross-check: t ∈ T′ ⇔ te is not strictly J-below e.
        let j_test_agrees = t.iter().all(|&x| {
            let te = self.mul(x, e);
            let strictly_below = self.j_below(te, e) && !self.j_below(e, te);
            (te.0 == level) == !strictly_below
        });
        let psi = |x: CliffordElement| self.mul(x, e);
        let psi_is_homomorphism = t_prime.iter().all(|&x| {
            t_prime
                .iter()
                .all(|&y| psi(self.mul(x, y)) == self.mul(psi(x), psi(y)))
        });
        let psi_fixes_intersection = inter.iter().all(|&x| psi(x) == x);
        // Image of ψ lies in T ∩ H: T is closed and e ∈ T ∩ H.
        debug_assert!(t.contains(&e));
        debug_assert!(t_prime.iter().all(|&x| inter.contains(&psi(x))));
        let members: BTreeSet<usize> = inter.iter().map(|&(_, g)| g).collect();
        let rk_g = self.groups[level].subset_rank(&members)?;
        let rk_c = self.rank_of_subalgebra(t)?;
        Ok(RetractionReport {
            level,
            rk_g,
            rk_c,
            holds: rk_g <= rk_c,
            psi_is_homomorphism,
            psi_fixes_intersection,
            j_test_agrees,
        })
    }

    /// Levels hit by the iterated images `Sφ, Sφ², …, Sφ^steps`.
    pub fn image_levels(&self, map: &[usize], steps: usize) -> Vec<BTreeSet<usize>> {
        let mut current: BTreeSet<usize> = (0..self.size).collect();
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            current = current.iter().map(|&x| map[x]).collect();
            out.push(current.iter().map(|&x| self.element(x).0).collect());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit;

    /// Two levels 1 > 0, both groups C2, identity link.
    fn two_level_c2() -> CliffordSemigroup {
        CliffordSemigroup::new(
            vec![vec![0, 0], vec![0, 1]],
            vec![Group::cyclic(2), Group::cyclic(2)],
            &[(1, 0, vec![0, 1])],
        )
        .unwrap()
    }

    /// Three-level chain 2 > 1 > 0 with groups C2, C4, C2.
    fn three_level_chain() -> CliffordSemigroup {
        let c2 = Group::cyclic(2);
        let c4 = Group::cyclic(4);
        CliffordSemigroup::new(
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            vec![c2.clone(), c4, c2],
            &[
                (2, 1, vec![0, 2]),       // C2 → C4: generator to the square
                (1, 0, vec![0, 1, 0, 1]), // C4 → C2: parity
                (2, 0, vec![0, 0]),       // must equal the composite
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_structures() {
        // Non-idempotent meet.
        assert!(matches!(
            CliffordSemigroup::new(
                vec![vec![1, 0], vec![0, 1]],
                vec![Group::cyclic(2), Group::cyclic(2)],
                &[],
            ),
            Err(CliffordError::NotASemilattice(_))
        ));
        // Missing link for the comparable pair.
        assert!(matches!(
            CliffordSemigroup::new(
                vec![vec![0, 0], vec![0, 1]],
                vec![Group::cyclic(2), Group::cyclic(2)],
                &[],
            ),
            Err(CliffordError::MissingLink(1, 0))
        ));
        // Link that is not a homomorphism (swaps identity away).
        assert!(matches!(
            CliffordSemigroup::new(
                vec![vec![0, 0], vec![0, 1]],
                vec![Group::cyclic(2), Group::cyclic(2)],
                &[(1, 0, vec![1, 0])],
            ),
            Err(CliffordError::LinkNotHom(1, 0))
        ));
        // Composition violation on a three-chain: direct link ≠ composite.
        assert!(matches!(
            CliffordSemigroup::new(
                vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2],],
                vec![Group::cyclic(2), Group::cyclic(2), Group::cyclic(2)],
                &[
                    (2, 1, vec![0, 1]),
                    (1, 0, vec![0, 1]),
                    (2, 0, vec![0, 0]), // composite would be the identity
                ],
            ),
            Err(CliffordError::LinksDontCompose(2, 1, 0))
        ));
    }

    #[test]
    fn multiplication_examples() {
        let s = two_level_c2();
        // Same level: plain group multiplication.
        assert_eq!(s.mul((1, 1), (1, 1)), (1, 0));
        // Mixed levels land at the meet through the link.
        assert_eq!(s.mul((1, 1), (0, 1)), (0, 0));
        assert_eq!(s.mul((1, 0), (0, 1)), (0, 1));
        // Identity at the top acts trivially on the bottom.
        assert_eq!(s.mul((1, 0), (0, 0)), (0, 0));
    }

    #[test]
    fn associativity_and_central_idempotents() {
        for s in [two_level_c2(), three_level_chain()] {
            let all = s.all_elements();
            assert!(all.len() <= 200);
            for &x in &all {
                for &y in &all {
                    for &z in &all {
                        assert_eq!(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z)));
                    }
                }
            }
            // Idempotents are exactly the per-level identities, and central.
            for &x in &all {
                let idem = s.is_idempotent(x);
                assert_eq!(idem, x.1 == s.group_at(x.0).identity());
                if idem {
                    for &y in &all {
                        assert_eq!(s.mul(x, y), s.mul(y, x));
                    }
                }
            }
        }
    }

    #[test]
    fn h_classes_equal_j_classes() {
        for s in [two_level_c2(), three_level_chain()] {
            let all = s.all_elements();
            for &x in &all {
                for &y in &all {
                    let same_j = s.j_below(x, y) && s.j_below(y, x);
                    assert_eq!(same_j, x.0 == y.0, "{x:?} vs {y:?}");
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let s = two_level_c2();
        // One idempotent closes to itself.
        assert_eq!(s.closure(&[(1, 0)]).unwrap(), BTreeSet::from([(1, 0)]));
        // A top unit of order 2 closes inside the top class.
        assert_eq!(
            s.closure(&[(1, 1)]).unwrap(),
            BTreeSet::from([(1, 0), (1, 1)])
        );
        // Mixed levels pull in meet-level products.
        let c = s.closure(&[(1, 1), (0, 1)]).unwrap();
        assert!(c.contains(&(0, 0)));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn index_report_two_level_example() {
        let s = two_level_c2();
        let top: BTreeSet<CliffordElement> = BTreeSet::from([(1, 0), (1, 1)]);
        let report = s.index_of(&top).unwrap();
        assert_eq!(
            report.per_class,
            vec![(0, IndexValue::Finite(2)), (1, IndexValue::Finite(1)),]
        );
        assert_eq!(report.sup, IndexValue::Finite(2));
        // Whole semigroup: all ones.
        let all: BTreeSet<CliffordElement> = s.all_elements().into_iter().collect();
        let report = s.index_of(&all).unwrap();
        assert_eq!(report.sup, IndexValue::Finite(1));
        // Green index of the top class: the bottom is one H^T-class.
        assert_eq!(s.green_index(&top).unwrap(), 2);
        assert_eq!(s.green_index(&all).unwrap(), 1);
    }

    #[test]
    fn index_rejects_non_subalgebras() {
        let s = two_level_c2();
        let not_closed: BTreeSet<CliffordElement> = BTreeSet::from([(1, 1)]);
        assert!(matches!(
            s.index_of(&not_closed),
            Err(CliffordError::NotASubalgebra)
        ));
    }

    #[test]
    fn single_group_indices_match_lagrange() {
        // S = C6 as a one-level semilattice; T = the subgroup {0, 3}.
        let s = CliffordSemigroup::new(vec![vec![0]], vec![Group::cyclic(6)], &[]).unwrap();
        let t: BTreeSet<CliffordElement> = BTreeSet::from([(0, 0), (0, 3)]);
        let report = s.index_report(&t).unwrap();
        assert_eq!(report.sup, IndexValue::Finite(3));
        assert_eq!(report.green, Some(3));
    }

    #[test]
    fn green_index_refines_cosets_in_nonabelian_groups() {
        // S3 with a non-normal order-2 subgroup: left and right cosets
        // differ, so the H^T-classes outside T are the four singletons and
        // the Green index is 5, strictly above the Lagrange index 3. The
        // general invariant green ≤ |S/H^T| still holds.
        let s3 = Group::symmetric(3).unwrap();
        let two = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let s = CliffordSemigroup::new(vec![vec![0]], vec![s3.clone()], &[]).unwrap();
        let t: BTreeSet<CliffordElement> = s3.closure(&[two]).iter().map(|&g| (0, g)).collect();
        let green = s.green_index(&t).unwrap();
        assert_eq!(green, 5);
        assert!(green <= s.relative_h_classes(&t).len());
    }

    #[test]
    fn retraction_two_level_whole_semigroup() {
        let s = two_level_c2();
        let all: BTreeSet<CliffordElement> = s.all_elements().into_iter().collect();
        let r = s.retraction_check(&all, 0).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.psi_is_homomorphism);
        assert!(r.psi_fixes_intersection);
        assert!(r.j_test_agrees);
        assert_eq!(r.rk_g, 1); // bottom ∩ S = C2

        // T inside one class: ψ is the identity there.
        let top: BTreeSet<CliffordElement> = BTreeSet::from([(1, 0), (1, 1)]);
        let r = s.retraction_check(&top, 1).unwrap();
        assert_eq!((r.rk_g, r.rk_c), (1, 1));
        assert!(r.holds && r.psi_fixes_intersection);

        assert!(matches!(
            s.retraction_check(&top, 0),
            Err(CliffordError::EmptyIntersection(0))
        ));
    }

    #[test]
    fn endomorphism_fix_and_orbits() {
        let s = two_level_c2();
        let n = s.element_count();
        // Collapse the top onto the bottom along the link; fix the bottom.
        let mut map = vec![0; n];
        for (x, slot) in map.iter_mut().enumerate() {
            let (a, g) = s.element(x);
            *slot = if a == 1 {
                s.index((0, s.link(1, 0, g)))
            } else {
                x
            };
        }
        orbit::validate_endo(n, |x, y| s.mul_idx(x, y), &map).unwrap();
        let fixed: Vec<CliffordElement> = orbit::fix_points(&map)
            .into_iter()
            .map(|x| s.element(x))
            .collect();
        assert_eq!(fixed, vec![(0, 0), (0, 1)]);
        let levels = s.image_levels(&map, 2);
        assert_eq!(levels[0], BTreeSet::from([0]));
        assert_eq!(levels[1], BTreeSet::from([0]));
    }

    #[test]
    fn json_round_trip() {
        let s = three_level_chain();
        let j = s.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: CliffordJson = serde_json::from_str(&text).unwrap();
        let s2 = CliffordSemigroup::from_json(&back).unwrap();
        assert_eq!(s2.element_count(), s.element_count());
        for x in s.all_elements() {
            for y in s.all_elements() {
                assert_eq!(s.mul(x, y), s2.mul(x, y));
            }
        }
    }
}
