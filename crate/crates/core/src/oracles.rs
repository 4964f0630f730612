//! Independent reference implementations used to cross-check the main
//! algorithms. Each oracle deliberately takes a different route from the
//! code it checks: ranks come from word combinatorics instead of graphs,
//! numeric invariants from long membership tables instead of formulas, word
//! classes from a global union-find instead of per-word searches.

pub mod nielsen {
    //! Rank of a finitely generated subgroup of a free group by greedy
    //! Nielsen reduction, working on words only.

    use std::cmp::Ordering;

    use crate::words::{shortlex_cmp, Word};

    /// Canonical representative of `{w, w⁻¹}`: the shortlex-smaller of the
    /// two freely reduced forms.
    pub fn canon(w: &Word) -> Word {
        let r = w.free_reduce();
        let ri = r.inverse();
        if shortlex_cmp(&ri, &r) == Ordering::Less {
            ri
        } else {
            r
        }
    }

    /// Returns `(rank, Nielsen-reduced generating set)`.
    ///
    /// Greedy descent first: drop trivial and duplicate generators (up to
    /// inversion), and replace a generator by any pairwise product that is
    /// shortlex-smaller. Each step strictly decreases the multiset of
    /// shortlex values, so the loop terminates; the budget is a loud
    /// backstop against a bug, never a silent truncation.
    ///
    /// The greedy fixpoint can still hide a dependency that only a
    /// three-factor product exposes (e.g. `aa, ab⁻¹, aba`, where
    /// `ba⁻¹·aa·a⁻¹b⁻¹a⁻¹ = a⁻¹`), so the fixpoint is verified against the
    /// Nielsen conditions and, on the rare failure, finished by an
    /// exhaustive search over tuples reachable by moves that never increase
    /// the total length. A reduced tuple is always reachable that way, a
    /// reduced tuple is a free basis, and every intermediate tuple still
    /// generates the subgroup — which makes the count exact.
    pub fn rank(generators: &[Word]) -> (usize, Vec<Word>) {
        let mut set: Vec<Word> = Vec::new();
        for g in generators {
            let c = canon(g);
            if !c.is_empty() && !set.contains(&c) {
                set.push(c);
            }
        }
        let budget = 10_000 + 200 * set.iter().map(Word::len).sum::<usize>();
        for _ in 0..budget {
            if !reduce_step(&mut set) {
                if !nielsen_reduced(&set) {
                    set = reduce_exhaustive(set);
                }
                set.sort_by(shortlex_cmp);
                return (set.len(), set);
            }
        }
        panic!("nielsen reduction exceeded its iteration budget on {set:?}");
    }

    /// The two Nielsen conditions beyond nontriviality, over all signed
    /// pairs and triples: no product of two shorter than either factor, and
    /// no middle factor of a three-term product swallowed entirely.
    fn nielsen_reduced(set: &[Word]) -> bool {
        let mut signed: Vec<Word> = set.to_vec();
        signed.extend(set.iter().map(Word::inverse));
        for u in &signed {
            for v in &signed {
                let uv = u.concat(v).free_reduce();
                if !uv.is_empty() && uv.len() < u.len().max(v.len()) {
                    return false;
                }
            }
        }
        for u in &signed {
            for v in &signed {
                if u.concat(v).free_reduce().is_empty() {
                    continue;
                }
                for w in &signed {
                    if v.concat(w).free_reduce().is_empty() {
                        continue;
                    }
                    let uvw = u.concat(v).concat(w).free_reduce();
                    if uvw.len() + v.len() <= u.len() + w.len() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The canonical form of a tuple: every word in class-minimal form,
    /// trivial words dropped, duplicates merged, shortlex-sorted. All of
    /// that is a composition of Nielsen moves, so generation is preserved.
    fn canonical_tuple(set: Vec<Word>) -> Vec<Word> {
        let mut out: Vec<Word> = set.iter().map(canon).filter(|w| !w.is_empty()).collect();
        out.sort_by(shortlex_cmp);
        out.dedup();
        out
    }

    /// Uniform-cost search over canonical tuples, expanding the four signed
    /// pairwise products per ordered pair and keeping only states whose
    /// total length stays within the start total. Stops at the first
    /// Nielsen-reduced tuple.
    fn reduce_exhaustive(start: Vec<Word>) -> Vec<Word> {
        use std::cmp::Reverse;
        use std::collections::{BinaryHeap, HashSet};

        let total = |s: &[Word]| s.iter().map(Word::len).sum::<usize>();
        let start = canonical_tuple(start);
        let t0 = total(&start);
        let mut seen: HashSet<Vec<Word>> = HashSet::from([start.clone()]);
        let mut heap = BinaryHeap::from([Reverse((t0, start))]);
        let mut popped = 0usize;
        while let Some(Reverse((_, s))) = heap.pop() {
            popped += 1;
            assert!(
                popped <= 500_000,
                "exhaustive nielsen search exceeded its node budget"
            );
            if nielsen_reduced(&s) {
                return s;
            }
            for i in 0..s.len() {
                for j in 0..s.len() {
                    if i == j {
                        continue;
                    }
                    let (vi, vj) = (s[i].clone(), s[j].clone());
                    for cand in [
                        vi.concat(&vj),
                        vi.concat(&vj.inverse()),
                        vj.concat(&vi),
                        vj.inverse().concat(&vi),
                    ] {
                        let mut next = s.clone();
                        next[i] = cand;
                        let next = canonical_tuple(next);
                        let t = total(&next);
                        if t <= t0 && seen.insert(next.clone()) {
                            heap.push(Reverse((t, next)));
                        }
                    }
                }
            }
        }
        unreachable!("length-bounded nielsen moves always reach a reduced tuple");
    }

    /// Applies the first available move; returns false at a fixpoint. The
    /// four candidates per ordered pair cover every signed product of two
    /// distinct generators, because `canon` identifies a word with its
    /// inverse.
    fn reduce_step(set: &mut Vec<Word>) -> bool {
        for i in 0..set.len() {
            for j in 0..set.len() {
                if i == j {
                    continue;
                }
                let (vi, vj) = (set[i].clone(), set[j].clone());
                let candidates = [
                    vi.concat(&vj),
                    vi.concat(&vj.inverse()),
                    vj.concat(&vi),
                    vj.inverse().concat(&vi),
                ];
                for cand in candidates {
                    let c = canon(&cand);
                    if c.is_empty() || set.iter().enumerate().any(|(k, w)| k != i && *w == c) {
                        set.remove(i);
                        return true;
                    }
                    if shortlex_cmp(&c, &set[i]) == Ordering::Less {
                        set[i] = c;
                        return true;
                    }
                }
            }
        }
        false
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use crate::words::Alphabet;

        fn words(ss: &[&str]) -> Vec<Word> {
            let ab = Alphabet::latin(3);
            ss.iter().map(|s| ab.parse_word(s).unwrap()).collect()
        }

        #[test]
        fn basic_ranks() {
            assert_eq!(rank(&[]).0, 0);
            assert_eq!(rank(&words(&["a a'"])).0, 0);
            assert_eq!(rank(&words(&["a", "b"])).0, 2);
            assert_eq!(rank(&words(&["a", "a'"])).0, 1);
            assert_eq!(rank(&words(&["a a", "a b"])).0, 2);
            assert_eq!(rank(&words(&["a a", "b", "a b a'"])).0, 3);
        }

        #[test]
        fn tie_breaking_escapes_plateaus() {
            // Every pairwise product here has the same length as what it
            // would replace; the lex tie-break and the duplicate rule must
            // still find the hidden dependency.
            assert_eq!(rank(&words(&["a b", "b' a", "a' a'"])).0, 2);
            assert_eq!(rank(&words(&["a b", "b' c", "c' a'"])).0, 2);
            assert_eq!(rank(&words(&["a b", "b' c", "c' a", "a' a'"])).0, 3);
        }

        #[test]
        fn three_factor_collapse_needs_the_exhaustive_tail() {
            // ba⁻¹·aa·a⁻¹b⁻¹a⁻¹ = a⁻¹, so this set generates everything;
            // no single pairwise product gets shorter, only the full
            // search sees it.
            assert_eq!(rank(&words(&["a a", "a b'", "a b a"])).0, 2);
            // The sibling set collapses pairwise ((ab)⁻¹·aba = a) and must
            // agree without ever entering the search.
            assert_eq!(rank(&words(&["a a", "a b", "a b a"])).0, 2);
        }

        #[test]
        fn reduced_set_is_canonical_and_generates() {
            let (r, set) = rank(&words(&["a b", "b' a", "a' a'"]));
            assert_eq!(r, set.len());
            for w in &set {
                assert_eq!(*w, canon(w));
            }
        }
    }
}

pub mod segment {
    //! Invariants of the additive closure `⟨gens⟩ ⊆ ℕ₊` (non-empty sums of
    //! generators; 0 is not a member), read off a long membership table.

    use crate::util::gcd;

    /// `table[x]` iff `x` is a non-empty sum of generators, for `x < len`.
    pub fn closure_table(gens: &[u64], len: usize) -> Vec<bool> {
        let mut table = vec![false; len];
        for x in 1..len {
            for &g in gens {
                let g = g as usize;
                if g <= x && (g == x || table[x - g]) {
                    table[x] = true;
                    break;
                }
            }
        }
        table
    }

    /// `(d, p)`: `d` is the gcd of the members and `p − 1` the largest
    /// multiple of `d` (zero included) that is not a member. Computed the
    /// slow way: `d` as the minimum pairwise gcd over the first 50 members
    /// (pairs with repetition) and `p` by scanning the table.
    ///
    /// Panics if any generator is zero or if the scan window turns out too
    /// small to see the last gap — loud, not wrong.
    pub fn profile(gens: &[u64]) -> (u64, u64) {
        assert!(!gens.is_empty() && gens.iter().all(|&g| g > 0));
        let m = *gens.iter().max().unwrap() as usize;
        let len = 2 * m * m + 2 * m + 2;
        let table = closure_table(gens, len);
        let members: Vec<u64> = (0..len)
            .filter(|&x| table[x])
            .take(50)
            .map(|x| x as u64)
            .collect();
        let mut d = u64::MAX;
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i..] {
                d = d.min(gcd(x, y));
            }
        }
        let mut last_gap = 0usize;
        let mut n = 0usize;
        while n < len {
            if !table[n] {
                last_gap = n;
            }
            n += d as usize;
        }
        assert!(
            last_gap < len / 2,
            "profile window too small for generators {gens:?}"
        );
        (d, last_gap as u64 + 1)
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn table_matches_hand_listing() {
            let t = closure_table(&[3, 5], 16);
            let members: Vec<usize> = (0..16).filter(|&x| t[x]).collect();
            assert_eq!(members, vec![3, 5, 6, 8, 9, 10, 11, 12, 13, 14, 15]);
        }

        #[test]
        fn profiles_of_known_semigroups() {
            assert_eq!(profile(&[3, 5]), (1, 8));
            assert_eq!(profile(&[2]), (2, 1));
            assert_eq!(profile(&[4, 6]), (2, 3));
            assert_eq!(profile(&[6, 10]), (2, 15));
            assert_eq!(profile(&[1]), (1, 1));
            assert_eq!(profile(&[6, 10, 15]), (1, 30));
        }
    }
}

pub mod lattice {
    //! Bounded brute-force closures in ℤ and ℤ², used to spot-check the
    //! structured membership routines.

    use std::collections::{BTreeSet, VecDeque};

    /// Non-empty sums of `gens` reachable while every partial sum stays in
    /// `[-bound, bound]` coordinatewise. An under-approximation of the
    /// closure in general, but exact for targets with all coordinates at
    /// most `bound − max|gen|` in absolute value: a sum can always be
    /// reordered to keep partial sums near the straight line to its target.
    pub fn box_closure(gens: &[(i64, i64)], bound: i64) -> BTreeSet<(i64, i64)> {
        let inside = |(x, y): (i64, i64)| x.abs() <= bound && y.abs() <= bound;
        let mut seen: BTreeSet<(i64, i64)> = BTreeSet::new();
        let mut queue: VecDeque<(i64, i64)> = VecDeque::new();
        for &g in gens {
            if inside(g) && seen.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some((x, y)) = queue.pop_front() {
            for &(gx, gy) in gens {
                let next = (x + gx, y + gy);
                if inside(next) && seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// One-dimensional version of [`box_closure`].
    pub fn int_closure(gens: &[i64], bound: i64) -> BTreeSet<i64> {
        box_closure(&gens.iter().map(|&g| (g, 0)).collect::<Vec<_>>(), bound)
            .into_iter()
            .map(|(x, _)| x)
            .collect()
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn int_closure_of_mixed_signs_is_a_grid() {
            let c = int_closure(&[4, -6], 40);
            // gcd 2: every even number of absolute value ≤ 40 − 6 is
            // reachable within the box.
            for x in -34..=34i64 {
                assert_eq!(
                    c.contains(&x),
                    x % 2 == 0 && x != 0 || x == 0 && c.contains(&0)
                );
            }
            assert!(c.contains(&-2) && c.contains(&2));
            assert!(c.contains(&0), "4·3 + (−6)·2 = 0");
        }

        #[test]
        fn box_closure_small_example() {
            let c = box_closure(&[(1, 1), (2, -1)], 10);
            assert!(c.contains(&(3, 0)));
            assert!(c.contains(&(1, 1)));
            assert!(!c.contains(&(0, 1)));
        }
    }
}

pub mod word_classes {
    //! Congruence classes of words of bounded length, for length-preserving
    //! relation sets, by saturating a union-find over every word at once.
    //! Exponential in the length bound; strictly a desk-scale oracle.

    use std::collections::HashMap;

    use crate::uf::UnionFind;

    pub struct AllClasses {
        max_len: usize,
        words: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, usize>,
        class: Vec<usize>,
        minimum: HashMap<usize, usize>,
    }

    impl AllClasses {
        /// Classes of all words of length ≤ `max_len` over `0..k` under the
        /// congruence generated by the (length-preserving) relations.
        pub fn build(k: usize, relations: &[(Vec<u32>, Vec<u32>)], max_len: usize) -> AllClasses {
            for (u, v) in relations {
                assert_eq!(u.len(), v.len(), "relation must preserve length");
            }
            let mut words: Vec<Vec<u32>> = vec![Vec::new()];
            let mut start = 0;
            for _ in 0..max_len {
                let end = words.len();
                for i in start..end {
                    for a in 0..k as u32 {
                        let mut w = words[i].clone();
                        w.push(a);
                        words.push(w);
                    }
                }
                start = end;
            }
            let index: HashMap<Vec<u32>, usize> = words
                .iter()
                .enumerate()
                .map(|(i, w)| (w.clone(), i))
                .collect();
            let mut uf = UnionFind::new(words.len());
            for (i, w) in words.iter().enumerate() {
                for (u, v) in relations {
                    for side in [(u, v), (v, u)] {
                        let (from, to) = side;
                        if from.len() > w.len() {
                            continue;
                        }
                        for pos in 0..=w.len() - from.len() {
                            if &w[pos..pos + from.len()] == from.as_slice() {
                                let mut rewritten = w.clone();
                                rewritten[pos..pos + from.len()].copy_from_slice(to);
                                let j = index[&rewritten];
                                let (a, b) = (uf.root(i), uf.root(j));
                                if a != b {
                                    uf.union_into(a, b);
                                }
                            }
                        }
                    }
                }
            }
            let class: Vec<usize> = (0..words.len()).map(|i| uf.root(i)).collect();
            let mut minimum: HashMap<usize, usize> = HashMap::new();
            // Words were generated in length-then-lex order, so the first
            // index seen per class is its shortlex-minimal member.
            for (i, &c) in class.iter().enumerate() {
                minimum.entry(c).or_insert(i);
            }
            AllClasses {
                max_len,
                words,
                index,
                class,
                minimum,
            }
        }

        pub fn max_len(&self) -> usize {
            self.max_len
        }

        fn id(&self, w: &[u32]) -> Option<usize> {
            self.index.get(w).map(|&i| self.class[i])
        }

        pub fn same(&self, a: &[u32], b: &[u32]) -> Option<bool> {
            Some(self.id(a)? == self.id(b)?)
        }

        pub fn canonical(&self, w: &[u32]) -> Option<&[u32]> {
            Some(self.words[self.minimum[&self.id(w)?]].as_slice())
        }

        pub fn members(&self, w: &[u32]) -> Option<Vec<&[u32]>> {
            let c = self.id(w)?;
            Some(
                (0..self.words.len())
                    .filter(|&i| self.class[i] == c)
                    .map(|i| self.words[i].as_slice())
                    .collect(),
            )
        }
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn commutative_classes_collapse_by_content() {
            // ab = ba over two letters: classes are multisets.
            let c = AllClasses::build(2, &[(vec![0, 1], vec![1, 0])], 4);
            assert_eq!(c.same(&[0, 1, 0], &[0, 0, 1]), Some(true));
            assert_eq!(c.same(&[0, 1], &[1, 1]), Some(false));
            assert_eq!(c.canonical(&[1, 0, 1]), Some([0, 1, 1].as_slice()));
            assert_eq!(c.members(&[0, 1]).unwrap().len(), 2);
        }

        #[test]
        fn trivial_relations_give_singletons() {
            let c = AllClasses::build(2, &[], 3);
            assert_eq!(c.same(&[0, 1], &[1, 0]), Some(false));
            assert_eq!(c.members(&[0, 1, 1]).unwrap().len(), 1);
        }

        #[test]
        fn out_of_range_words_are_refused() {
            let c = AllClasses::build(2, &[], 2);
            assert_eq!(c.same(&[0, 1, 1], &[0, 1]), None);
        }
    }
}
