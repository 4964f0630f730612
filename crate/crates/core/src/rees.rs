//! Rees matrix semigroups over a finite group, with the H-class inverse as
//! a unary operation: subalgebra closure, group components, and the
//! automaton that turns a generating set into a rank bound for a component.
//!
//! Elements are triples `(i, g, λ)` with row `i`, group part `g`, column
//! `λ`; multiplication is `(i, g, λ)(j, h, μ) = (i, g·p[λ][j]·h, μ)` and
//! the unary operation inverts within the H-class:
//! `(i, g, λ)* = (i, p[λ][i]⁻¹·g⁻¹·p[λ][i]⁻¹, λ)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps;
use crate::groups::{Group, GroupError, GroupJson};
use crate::stallings::Automaton;
use crate::util::any_combination;
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Error)]
pub enum ReesError {
    #[error("sandwich matrix must be |Λ| × |I| with entries < |G|")]
    BadMatrix,
    #[error("element ({0}, {1}, {2}) out of range")]
    ElementOutOfRange(usize, usize, usize),
    #[error("at least one generator is required")]
    EmptyGenerators,
    #[error("target H-class ({0}, {1}) is outside the generated rows × columns")]
    TargetOutsideSupport(usize, usize),
    #[error("subalgebra has {size} elements, above the search cap {cap}")]
    TooManyElements { size: usize, cap: usize },
    #[error("no generating subset of size ≤ {cap} found; raise the cap to search further")]
    RankSearchExhausted { cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type ReesElement = (usize, usize, usize);

#[derive(Clone, Debug)]
pub struct ReesSemigroup {
    group: Group,
    rows: usize,
    cols: usize,
    /// `p[λ][i]`: the sandwich entry multiplied between a column-λ element
    /// and a row-i element.
    p: Vec<Vec<usize>>,
}

/// Wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReesJson {
    pub group: GroupJson,
    pub i: usize,
    pub lambda: usize,
    pub p: Vec<Vec<usize>>,
}

impl ReesSemigroup {
    pub fn new(
        group: Group,
        rows: usize,
        cols: usize,
        p: Vec<Vec<usize>>,
    ) -> Result<ReesSemigroup, ReesError> {
        if rows == 0
            || cols == 0
            || p.len() != cols
            || p.iter()
                .any(|r| r.len() != rows || r.iter().any(|&g| g >= group.order()))
        {
            return Err(ReesError::BadMatrix);
        }
        Ok(ReesSemigroup {
            group,
            rows,
            cols,
            p,
        })
    }

    pub fn from_json(json: &ReesJson) -> Result<ReesSemigroup, ReesError> {
        let group = Group::from_json(&json.group)?;
        ReesSemigroup::new(group, json.i, json.lambda, json.p.clone())
    }

    pub fn to_json(&self) -> ReesJson {
        ReesJson {
            group: self.group.to_json(),
            i: self.rows,
            lambda: self.cols,
            p: self.p.clone(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn sandwich(&self, col: usize, row: usize) -> usize {
        self.p[col][row]
    }

    pub fn element_count(&self) -> usize {
        self.rows * self.group.order() * self.cols
    }

    pub fn check_element(&self, (i, g, l): ReesElement) -> Result<(), ReesError> {
        if i < self.rows && g < self.group.order() && l < self.cols {
            Ok(())
        } else {
            Err(ReesError::ElementOutOfRange(i, g, l))
        }
    }

    pub fn mul(&self, (i, g, l): ReesElement, (j, h, m): ReesElement) -> ReesElement {
        let gp = self.group.mul(self.group.mul(g, self.p[l][j]), h);
        (i, gp, m)
    }

    /// Inverse within the H-class of the element.
    pub fn unary(&self, (i, g, l): ReesElement) -> ReesElement {
        let pinv = self.group.inv(self.p[l][i]);
        let gi = self
            .group
            .mul(self.group.mul(pinv, self.group.inv(g)), pinv);
        (i, gi, l)
    }

    pub fn idempotent(&self, i: usize, l: usize) -> ReesElement {
        (i, self.group.inv(self.p[l][i]), l)
    }

    pub fn all_elements(&self) -> Vec<ReesElement> {
        let mut out = Vec::with_capacity(self.element_count());
        for i in 0..self.rows {
            for g in 0..self.group.order() {
                for l in 0..self.cols {
                    out.push((i, g, l));
                }
            }
        }
        out
    }

    /// Dense element index for use with the orbit machinery.
    pub fn index(&self, (i, g, l): ReesElement) -> usize {
        (i * self.group.order() + g) * self.cols + l
    }

    pub fn element(&self, idx: usize) -> ReesElement {
        let l = idx % self.cols;
        let rest = idx / self.cols;
        (rest / self.group.order(), rest % self.group.order(), l)
    }

    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        self.index(self.mul(self.element(x), self.element(y)))
    }

    /// Closure of `gens` under multiplication and the unary operation.
    pub fn subalgebra(&self, gens: &[ReesElement]) -> Result<CsSubalgebra, ReesError> {
        if gens.is_empty() {
            return Err(ReesError::EmptyGenerators);
        }
        for &g in gens {
            self.check_element(g)?;
        }
        let mut elements: BTreeSet<ReesElement> = gens.iter().copied().collect();
        let mut frontier: Vec<ReesElement> = elements.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let star = self.unary(x);
            if elements.insert(star) {
                frontier.push(star);
            }
            // Products against everything known so far, both sides.
            let known: Vec<ReesElement> = elements.iter().copied().collect();
            for y in known {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if elements.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        let rows = elements.iter().map(|&(i, _, _)| i).collect();
        let cols = elements.iter().map(|&(_, _, l)| l).collect();
        Ok(CsSubalgebra {
            elements,
            rows,
            cols,
        })
    }

    /// Image of the H-class `(i, λ)` of the subalgebra in the group, under
    /// `(i, g, λ) ↦ g·p[λ][i]`. The image is a subgroup.
    pub fn component_subgroup(
        &self,
        sub: &CsSubalgebra,
        i: usize,
        l: usize,
    ) -> Result<BTreeSet<usize>, ReesError> {
        if !sub.rows.contains(&i) || !sub.cols.contains(&l) {
            return Err(ReesError::TargetOutsideSupport(i, l));
        }
        Ok(sub
            .elements
            .iter()
            .filter(|&&(j, _, m)| j == i && m == l)
            .map(|&(_, g, _)| self.group.mul(g, self.p[l][i]))
            .collect())
    }

    /// Minimum size of a subset of the subalgebra that regenerates it
    /// under multiplication and the unary operation, with the witness
    /// subset. Searches sizes up to the configured cap and reports failure
    /// honestly instead of guessing.
    pub fn cs_rank(&self, sub: &CsSubalgebra) -> Result<(usize, Vec<ReesElement>), ReesError> {
        let size = sub.elements.len();
        if size > caps::DEFAULT_CS_ELEMENT_CAP {
            return Err(ReesError::TooManyElements {
                size,
                cap: caps::DEFAULT_CS_ELEMENT_CAP,
            });
        }
        let pool: Vec<ReesElement> = sub.elements.iter().copied().collect();
        for k in 1..=caps::DEFAULT_CS_SUBSET_CAP.min(size) {
            let mut witness = None;
            any_combination(pool.len(), k, |picked| {
                let seed: Vec<ReesElement> = picked.iter().map(|&i| pool[i]).collect();
                let closed = self.subalgebra(&seed).expect("seed elements are in range");
                if closed.elements == sub.elements {
                    witness = Some(seed);
                    true
                } else {
                    false
                }
            });
            if let Some(seed) = witness {
                return Ok((k, seed));
            }
        }
        Err(ReesError::RankSearchExhausted {
            cap: caps::DEFAULT_CS_SUBSET_CAP,
        })
    }

    /// The automaton over the group's elements (one letter per element)
    /// whose successful-path products are exactly the group component of
    /// the H-class `(i, λ)` of `⟨gens⟩`. States: a start, one per column
    /// in the generated support, and a sink.
    ///
    /// Edges: start → column of each *row-`i`* generator, labelled by its
    /// group part (restricting to row `i` is what keeps every path product
    /// inside the `(i, λ)` component); column λ′ → column λ″ labelled
    /// `p[λ′][i″]·g` per generator `(i″, g, λ″)`; the target column → sink
    /// labelled `p[λ][i]`.
    pub fn group_automaton(
        &self,
        gens: &[ReesElement],
        i: usize,
        l: usize,
    ) -> Result<(Alphabet, Automaton), ReesError> {
        if gens.is_empty() {
            return Err(ReesError::EmptyGenerators);
        }
        for &g in gens {
            self.check_element(g)?;
        }
        let cols: Vec<usize> = {
            let set: BTreeSet<usize> = gens.iter().map(|&(_, _, m)| m).collect();
            set.into_iter().collect()
        };
        let rows: BTreeSet<usize> = gens.iter().map(|&(j, _, _)| j).collect();
        if !rows.contains(&i) || !cols.contains(&l) {
            return Err(ReesError::TargetOutsideSupport(i, l));
        }
        let col_state = |m: usize| 1 + cols.iter().position(|&c| c == m).unwrap();
        let sink = cols.len() + 1;
        let letter = |g: usize| Letter {
            base: g as u32,
            inverted: false,
        };
        let mut edges = BTreeSet::new();
        for &(j, g, m) in gens {
            if j == i {
                edges.insert((0, letter(g), col_state(m)));
            }
        }
        for &c in &cols {
            for &(j, g, m) in gens {
                let lab = self.group.mul(self.p[c][j], g);
                edges.insert((col_state(c), letter(lab), col_state(m)));
            }
        }
        edges.insert((col_state(l), letter(self.p[l][i]), sink));
        let alphabet = Alphabet::new((0..self.group.order()).map(|g| format!("g{g}")))
            .expect("generated names are valid");
        let automaton =
            Automaton::new(sink + 1, 0, [sink], edges).expect("states were numbered consecutively");
        Ok((alphabet, automaton))
    }

    /// Product in the group of the letters of `w` (empty product is the
    /// identity).
    pub fn evaluate_word(&self, w: &Word) -> usize {
        w.letters().iter().fold(self.group.identity(), |acc, &x| {
            debug_assert!(!x.inverted);
            self.group.mul(acc, x.base as usize)
        })
    }

    /// End-to-end rank bound data for one H-class component.
    pub fn component_report(
        &self,
        gens: &[ReesElement],
        i: usize,
        l: usize,
    ) -> Result<ComponentReport, ReesError> {
        let sub = self.subalgebra(gens)?;
        let component = self.component_subgroup(&sub, i, l)?;
        let component_rank = self.group.subset_rank(&component)?;
        let (cs_rank, witness) = self.cs_rank(&sub)?;
        let (_, automaton) = self.group_automaton(&witness, i, l)?;
        let ragr = automaton.ragr_bound();
        Ok(ComponentReport {
            subalgebra_size: sub.elements.len(),
            component_order: component.len(),
            component_rank,
            cs_rank,
            automaton_bound: ragr,
            quadratic_bound: cs_rank * cs_rank + 1,
        })
    }
}

/// A subset closed under multiplication and the H-class inverse, with its
/// row and column support. Closures never leave the generators' support:
/// products keep the left factor's row and the right factor's column, and
/// the unary operation keeps both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsSubalgebra {
    pub elements: BTreeSet<ReesElement>,
    pub rows: BTreeSet<usize>,
    pub cols: BTreeSet<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub subalgebra_size: usize,
    pub component_order: usize,
    pub component_rank: usize,
    pub cs_rank: usize,
    pub automaton_bound: usize,
    pub quadratic_bound: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// C2 over a 2×2 index grid with one twisted sandwich entry.
    fn small_rees() -> ReesSemigroup {
        let c2 = Group::cyclic(2);
        ReesSemigroup::new(c2, 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap()
    }

    fn random_rees(seed: u64) -> (ReesSemigroup, Vec<ReesElement>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let group = match rng.gen_range(0..4) {
            0 => Group::cyclic(2),
            1 => Group::cyclic(3),
            2 => Group::cyclic(4),
            _ => Group::symmetric(3).unwrap(),
        };
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let p = (0..cols)
            .map(|_| (0..rows).map(|_| rng.gen_range(0..group.order())).collect())
            .collect();
        let s = ReesSemigroup::new(group, rows, cols, p).unwrap();
        let k = rng.gen_range(1..=3);
        let gens = (0..k)
            .map(|_| {
                (
                    rng.gen_range(0..s.row_count()),
                    rng.gen_range(0..s.group().order()),
                    rng.gen_range(0..s.col_count()),
                )
            })
            .collect();
        (s, gens)
    }

    #[test]
    fn multiplication_is_associative() {
        let s = small_rees();
        let all = s.all_elements();
        for &x in &all {
            for &y in &all {
                for &z in &all {
                    assert_eq!(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn unary_is_the_h_class_inverse() {
        for seed in 0..10 {
            let (s, _) = random_rees(seed);
            for x in s.all_elements() {
                let star = s.unary(x);
                let (i, _, l) = x;
                assert_eq!(s.unary(star), x, "involution");
                assert_eq!(s.mul(x, star), s.idempotent(i, l));
                assert_eq!(s.mul(s.mul(x, star), x), x);
                let e = s.idempotent(i, l);
                assert_eq!(s.mul(e, e), e);
                assert_eq!(s.mul(e, x), x);
                assert_eq!(s.mul(x, e), x);
            }
        }
    }

    #[test]
    fn index_round_trips() {
        let s = small_rees();
        for (k, x) in s.all_elements().into_iter().enumerate() {
            assert_eq!(s.index(x), k);
            assert_eq!(s.element(k), x);
        }
    }

    #[test]
    fn subalgebra_support_equals_generator_support() {
        for seed in 0..40 {
            let (s, gens) = random_rees(seed);
            let sub = s.subalgebra(&gens).unwrap();
            let rows: BTreeSet<usize> = gens.iter().map(|&(i, _, _)| i).collect();
            let cols: BTreeSet<usize> = gens.iter().map(|&(_, _, l)| l).collect();
            assert_eq!(sub.rows, rows, "seed {seed}");
            assert_eq!(sub.cols, cols, "seed {seed}");
            // And the closure is genuinely closed.
            let all: Vec<ReesElement> = sub.elements.iter().copied().collect();
            for &x in &all {
                assert!(sub.elements.contains(&s.unary(x)));
                for &y in &all {
                    assert!(sub.elements.contains(&s.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn full_semigroup_component_is_whole_group() {
        let s = small_rees();
        let sub = s.subalgebra(&s.all_elements()).unwrap();
        for i in 0..2 {
            for l in 0..2 {
                let c = s.component_subgroup(&sub, i, l).unwrap();
                assert_eq!(c.len(), 2);
            }
        }
    }

    #[test]
    fn component_is_a_subgroup() {
        for seed in 0..40 {
            let (s, gens) = random_rees(seed);
            let sub = s.subalgebra(&gens).unwrap();
            let &(i, _, _) = gens.first().unwrap();
            let &(_, _, l) = gens.first().unwrap();
            let c = s.component_subgroup(&sub, i, l).unwrap();
            assert!(c.contains(&s.group().identity()), "seed {seed}");
            for &a in &c {
                assert!(c.contains(&s.group().inv(a)));
                for &b in &c {
                    assert!(c.contains(&s.group().mul(a, b)), "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn automaton_language_generates_the_component() {
        for seed in 0..25 {
            let (s, gens) = random_rees(seed);
            let sub = s.subalgebra(&gens).unwrap();
            let &(i, _, _) = gens.first().unwrap();
            let &(_, _, l) = gens.first().unwrap();
            let component = s.component_subgroup(&sub, i, l).unwrap();
            let (_, aut) = s.group_automaton(&gens, i, l).unwrap();
            let mut products = BTreeSet::new();
            for w in aut.language_words(7) {
                let v = s.evaluate_word(&w);
                assert!(component.contains(&v), "seed {seed}: stray product");
                products.insert(v);
            }
            let generated = s
                .group()
                .closure(&products.iter().copied().collect::<Vec<_>>());
            assert_eq!(generated, component, "seed {seed}");
        }
    }

    #[test]
    fn automaton_start_edges_respect_the_target_row() {
        // C2, two rows, one column, p = [[e, g]]: ⟨(0,e,0), (1,g,0)⟩ has
        // trivial component at (0,0) but the row-1 generator contributes g
        // to every product it starts. Start edges must exclude it, or the
        // path labels escape the component.
        let c2 = Group::cyclic(2);
        let s = ReesSemigroup::new(c2, 2, 1, vec![vec![0, 1]]).unwrap();
        let gens = [(0, 0, 0), (1, 1, 0)];
        let sub = s.subalgebra(&gens).unwrap();
        let component = s.component_subgroup(&sub, 0, 0).unwrap();
        assert_eq!(component, BTreeSet::from([0]));
        let (_, aut) = s.group_automaton(&gens, 0, 0).unwrap();
        let products: BTreeSet<usize> = aut
            .language_words(8)
            .iter()
            .map(|w| s.evaluate_word(w))
            .collect();
        assert_eq!(products, component);
    }

    #[test]
    fn rank_bound_chain_holds_on_samples() {
        for seed in 0..25 {
            let (s, gens) = random_rees(seed);
            let &(i, _, _) = gens.first().unwrap();
            let &(_, _, l) = gens.first().unwrap();
            let r = s.component_report(&gens, i, l).unwrap();
            assert!(r.component_rank <= r.automaton_bound, "seed {seed}: {r:?}");
            assert!(r.automaton_bound <= r.quadratic_bound, "seed {seed}: {r:?}");
        }
    }

    #[test]
    fn cs_rank_finds_small_witnesses() {
        let s = small_rees();
        let sub = s.subalgebra(&[(0, 1, 1), (1, 0, 0)]).unwrap();
        let (r, witness) = s.cs_rank(&sub).unwrap();
        assert!(r <= 2);
        assert_eq!(witness.len(), r);
        assert_eq!(s.subalgebra(&witness).unwrap().elements, sub.elements);
    }

    #[test]
    fn errors_are_structured() {
        let s = small_rees();
        assert!(matches!(s.subalgebra(&[]), Err(ReesError::EmptyGenerators)));
        assert!(matches!(
            s.subalgebra(&[(5, 0, 0)]),
            Err(ReesError::ElementOutOfRange(5, 0, 0))
        ));
        let sub = s.subalgebra(&[(0, 0, 0)]).unwrap();
        assert!(matches!(
            s.component_subgroup(&sub, 1, 1),
            Err(ReesError::TargetOutsideSupport(1, 1))
        ));
        assert!(matches!(
            ReesSemigroup::new(Group::cyclic(2), 2, 2, vec![vec![0, 0]]),
            Err(ReesError::BadMatrix)
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = small_rees();
        let j = s.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: ReesJson = serde_json::from_str(&text).unwrap();
        let s2 = ReesSemigroup::from_json(&back).unwrap();
        assert_eq!(s2.element_count(), s.element_count());
        for x in s.all_elements() {
            for y in s.all_elements() {
                assert_eq!(s.mul(x, y), s2.mul(x, y));
            }
        }
    }

    #[test]
    fn endomorphisms_via_index_maps() {
        use crate::orbit;
        let s = small_rees();
        let n = s.element_count();
        // The identity map is always an endomorphism.
        let id: Vec<usize> = (0..n).collect();
        assert!(orbit::validate_endo(n, |a, b| s.mul_idx(a, b), &id).is_ok());
        let report = orbit::OrbitReport::of(&id);
        assert_eq!(report.period_lcm, 1);
        assert_eq!(report.max_preperiod, 0);
    }
}
