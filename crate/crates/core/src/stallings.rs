//! Automata over `A ∪ A⁻¹` and the Stallings rank machinery for finitely
//! generated subgroups of free groups.
//!
//! Terminology used throughout:
//!
//! * *dual*: the edge set is closed under `(p, a, q) ↦ (q, a⁻¹, p)`;
//! * *deterministic*: no vertex has two distinct out-edges with one label;
//! * *trim*: every vertex lies on some successful path (base → terminal);
//! * *inverse*: dual, deterministic and trim;
//! * *Stallings graph*: an inverse automaton with terminal set `{q0}` in
//!   which every vertex other than `q0` has at least two out-edges.
//!
//! Edge counts (`|E|`) always count labelled directed triples, so a dual
//! automaton has an even count and the rank of a Stallings graph is
//! `|E|/2 − |Q| + 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::uf::UnionFind;
use crate::words::{shortlex_cmp, Alphabet, Letter, Word, WordError};

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("vertex {0} out of range (automaton has {1} vertices)")]
    VertexOutOfRange(usize, usize),
    #[error("automaton must have at least one vertex")]
    NoVertices,
    #[error("automaton is not dual: edge ({0}, {1:?}, {2}) has no reverse")]
    NotDual(usize, Letter, usize),
    #[error("automaton is not deterministic at vertex {0} on {1:?}")]
    NotDeterministic(usize, Letter),
    #[error("vertex {0} is not reachable from the base vertex")]
    Unreachable(usize),
    #[error("automaton recognizes the empty language")]
    EmptyLanguage,
    #[error("chain is not ascending: generator `{witness}` of term {index} is not in term {next}")]
    NotAscending {
        index: usize,
        next: usize,
        witness: String,
    },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite automaton over `A ∪ A⁻¹`: vertices `0..vertex_count`, one base
/// vertex, a terminal set, and a set of labelled directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    vertex_count: usize,
    base: usize,
    terminals: BTreeSet<usize>,
    edges: BTreeSet<(usize, Letter, usize)>,
}

impl Automaton {
    pub fn new(
        vertex_count: usize,
        base: usize,
        terminals: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, Letter, usize)>,
    ) -> Result<Automaton, AutomatonError> {
        if vertex_count == 0 {
            return Err(AutomatonError::NoVertices);
        }
        if base >= vertex_count {
            return Err(AutomatonError::VertexOutOfRange(base, vertex_count));
        }
        let terminals: BTreeSet<usize> = terminals.into_iter().collect();
        if let Some(&t) = terminals.iter().find(|&&t| t >= vertex_count) {
            return Err(AutomatonError::VertexOutOfRange(t, vertex_count));
        }
        let edges: BTreeSet<(usize, Letter, usize)> = edges.into_iter().collect();
        for &(u, _, v) in &edges {
            let bad = if u >= vertex_count {
                Some(u)
            } else if v >= vertex_count {
                Some(v)
            } else {
                None
            };
            if let Some(b) = bad {
                return Err(AutomatonError::VertexOutOfRange(b, vertex_count));
            }
        }
        Ok(Automaton {
            vertex_count,
            base,
            terminals,
            edges,
        })
    }

    /// The one-vertex automaton with empty language (no terminals).
    pub fn degenerate() -> Automaton {
        Automaton {
            vertex_count: 1,
            base: 0,
            terminals: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    pub fn edges(&self) -> &BTreeSet<(usize, Letter, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_dual(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, l, v)| self.edges.contains(&(v, l.inverse(), u)))
    }

    pub fn is_deterministic(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|&(u, l, _)| seen.insert((u, l)))
    }

    fn forward_reachable(&self) -> Vec<bool> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for &(u, _, v) in &self.edges {
            out[u].push(v);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([self.base]);
        seen[self.base] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &out[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn backward_reachable(&self) -> Vec<bool> {
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for &(u, _, v) in &self.edges {
            inc[v].push(u);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue: VecDeque<usize> = self.terminals.iter().copied().collect();
        for &t in &self.terminals {
            seen[t] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &u in &inc[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    pub fn has_successful_path(&self) -> bool {
        let fwd = self.forward_reachable();
        self.terminals.iter().any(|&t| fwd[t])
    }

    /// Every vertex lies on some successful path.
    pub fn is_trim(&self) -> bool {
        let fwd = self.forward_reachable();
        let bwd = self.backward_reachable();
        (0..self.vertex_count).all(|v| fwd[v] && bwd[v])
    }

    /// Restricts to vertices on successful paths. If the language is empty
    /// the result is the degenerate automaton (`Q = {q0}`, no terminals),
    /// detectable via [`Automaton::has_successful_path`].
    pub fn trim(&self) -> Automaton {
        let fwd = self.forward_reachable();
        let bwd = self.backward_reachable();
        let alive: Vec<bool> = (0..self.vertex_count).map(|v| fwd[v] && bwd[v]).collect();
        if !alive[self.base] {
            return Automaton::degenerate();
        }
        let mut renum = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if alive[v] {
                renum[v] = next;
                next += 1;
            }
        }
        Automaton {
            vertex_count: next,
            base: renum[self.base],
            terminals: self
                .terminals
                .iter()
                .filter(|&&t| alive[t])
                .map(|&t| renum[t])
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|&&(u, _, v)| alive[u] && alive[v])
                .map(|&(u, l, v)| (renum[u], l, renum[v]))
                .collect(),
        }
    }

    /// Adds the reverse `(q, a⁻¹, p)` of every edge not already present.
    pub fn dualize(&self) -> Automaton {
        let mut edges = self.edges.clone();
        for &(u, l, v) in &self.edges {
            edges.insert((v, l.inverse(), u));
        }
        Automaton {
            edges,
            ..self.clone()
        }
    }

    /// Identifies every terminal with the base vertex; the result has
    /// terminal set `{q0}`.
    pub fn merge_terminals(&self) -> Automaton {
        let class = |v: usize| {
            if v == self.base || self.terminals.contains(&v) {
                self.base
            } else {
                v
            }
        };
        let mut renum = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for (v, slot) in renum.iter_mut().enumerate() {
            if class(v) == v {
                *slot = next;
                next += 1;
            }
        }
        Automaton {
            vertex_count: next,
            base: renum[self.base],
            terminals: BTreeSet::from([renum[self.base]]),
            edges: self
                .edges
                .iter()
                .map(|&(u, l, v)| (renum[class(u)], l, renum[class(v)]))
                .collect(),
        }
    }

    /// Stallings folding: merges targets of equally-labelled out-edges until
    /// the automaton is deterministic. Requires a dual automaton; the result
    /// is dual, and independent of the merge order up to nothing at all —
    /// the vertex numbering is renormalized, so equal inputs give equal
    /// outputs.
    pub fn fold(&self) -> Result<Automaton, AutomatonError> {
        self.require_dual()?;
        Ok(self.fold_impl(|len| len - 1))
    }

    /// Folding with a seeded random worklist order; exists so tests can
    /// check the confluence of folding.
    pub fn fold_seeded(&self, seed: u64) -> Result<Automaton, AutomatonError> {
        self.require_dual()?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Ok(self.fold_impl(move |len| rng.gen_range(0..len)))
    }

    fn require_dual(&self) -> Result<(), AutomatonError> {
        for &(u, l, v) in &self.edges {
            if !self.edges.contains(&(v, l.inverse(), u)) {
                return Err(AutomatonError::NotDual(u, l, v));
            }
        }
        Ok(())
    }

    fn fold_impl(&self, mut pick: impl FnMut(usize) -> usize) -> Automaton {
        let n = self.vertex_count;
        let mut uf = UnionFind::new(n);
        let mut adj: Vec<BTreeMap<Letter, BTreeSet<usize>>> = vec![BTreeMap::new(); n];
        for &(u, l, v) in &self.edges {
            adj[u].entry(l).or_default().insert(v);
        }
        let mut queue: Vec<usize> = (0..n).collect();
        while !queue.is_empty() {
            let idx = pick(queue.len());
            let v = uf.root(queue.swap_remove(idx));
            let letters: Vec<Letter> = adj[v].keys().copied().collect();
            let mut clash: Option<(usize, usize)> = None;
            for l in letters {
                let targets = std::mem::take(adj[v].get_mut(&l).unwrap());
                let roots: BTreeSet<usize> = targets.into_iter().map(|t| uf.root(t)).collect();
                let mut it = roots.iter();
                if roots.len() >= 2 {
                    clash = Some((*it.next().unwrap(), *it.next().unwrap()));
                }
                *adj[v].get_mut(&l).unwrap() = roots;
                if clash.is_some() {
                    break;
                }
            }
            if let Some((t1, t2)) = clash {
                // Merge the smaller adjacency map into the larger.
                let (winner, loser) = if adj[t1].len() >= adj[t2].len() {
                    (t1, t2)
                } else {
                    (t2, t1)
                };
                uf.union_into(loser, winner);
                let moved = std::mem::take(&mut adj[loser]);
                for (l, ts) in moved {
                    adj[winner].entry(l).or_default().extend(ts);
                }
                queue.push(winner);
                let vr = uf.root(v);
                if vr != winner {
                    queue.push(vr);
                }
            }
        }
        // Rebuild with compact numbering of the class representatives.
        let mut renum = vec![usize::MAX; n];
        let mut next = 0;
        for (v, slot) in renum.iter_mut().enumerate() {
            if uf.root(v) == v {
                *slot = next;
                next += 1;
            }
        }
        let m = |v: usize, uf: &mut UnionFind| renum[uf.root(v)];
        let edges: BTreeSet<(usize, Letter, usize)> = self
            .edges
            .iter()
            .map(|&(u, l, v)| (m(u, &mut uf), l, m(v, &mut uf)))
            .collect();
        let terminals = self.terminals.iter().map(|&t| m(t, &mut uf)).collect();
        Automaton {
            vertex_count: next,
            base: m(self.base, &mut uf),
            terminals,
            edges,
        }
    }

    /// Successively removes vertices of out-degree ≤ 1 distinct from the
    /// base. Requires a dual automaton (edges are removed in dual pairs).
    pub fn prune(&self) -> Automaton {
        let n = self.vertex_count;
        let mut out: Vec<BTreeSet<(Letter, usize)>> = vec![BTreeSet::new(); n];
        for &(u, l, v) in &self.edges {
            out[u].insert((l, v));
        }
        let mut alive = vec![true; n];
        let mut queue: Vec<usize> = (0..n)
            .filter(|&v| v != self.base && out[v].len() <= 1)
            .collect();
        while let Some(v) = queue.pop() {
            if !alive[v] || v == self.base || out[v].len() > 1 {
                continue;
            }
            alive[v] = false;
            if let Some(&(l, w)) = out[v].iter().next() {
                out[v].clear();
                if w != v {
                    out[w].remove(&(l.inverse(), v));
                    if w != self.base && out[w].len() <= 1 {
                        queue.push(w);
                    }
                }
            }
        }
        let mut renum = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if alive[v] {
                renum[v] = next;
                next += 1;
            }
        }
        Automaton {
            vertex_count: next,
            base: renum[self.base],
            terminals: self
                .terminals
                .iter()
                .filter(|&&t| alive[t])
                .map(|&t| renum[t])
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|&&(u, _, v)| alive[u] && alive[v])
                .map(|&(u, l, v)| (renum[u], l, renum[v]))
                .collect(),
        }
    }

    /// Rank bound for the subgroup generated by the image of the language:
    /// `|E| − |Q| + |{q0} ∪ T|` when the automaton is trim, `|E|` otherwise.
    pub fn ragr_bound(&self) -> usize {
        let e = self.edges.len();
        if self.is_trim() {
            let mut roots = self.terminals.clone();
            roots.insert(self.base);
            e + roots.len() - self.vertex_count
        } else {
            e
        }
    }

    /// The full normalization pipeline: trim, merge terminals into the base,
    /// close under duals, fold, prune. Errors if the language is empty.
    pub fn pipeline(&self) -> Result<Pipeline, AutomatonError> {
        let trimmed = self.trim();
        if trimmed.terminals.is_empty() {
            return Err(AutomatonError::EmptyLanguage);
        }
        let a1 = trimmed.merge_terminals();
        let a2 = a1.dualize();
        let a3 = a2.fold()?;
        let a4 = a3.prune();
        let report = RankReport::of(&a4);
        Ok(Pipeline {
            trimmed,
            a1,
            a2,
            a3,
            a4,
            report,
        })
    }

    /// Reduced labels of successful paths of raw length ≤ `max_len`.
    /// Exponential in `max_len`; desk-scale use only.
    pub fn language_words(&self, max_len: usize) -> BTreeSet<Word> {
        let mut out: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); self.vertex_count];
        for &(u, l, v) in &self.edges {
            out[u].push((l, v));
        }
        let mut result = BTreeSet::new();
        let mut seen: HashSet<(usize, Word)> = HashSet::new();
        let mut layer: Vec<(usize, Word)> = vec![(self.base, Word::empty())];
        seen.insert(layer[0].clone());
        for _ in 0..=max_len {
            let mut next_layer = Vec::new();
            for (v, w) in &layer {
                if self.terminals.contains(v) {
                    result.insert(w.clone());
                }
                for &(l, t) in &out[*v] {
                    let nw = w.concat(&Word::from_letters(vec![l])).free_reduce();
                    let state = (t, nw);
                    if seen.insert(state.clone()) {
                        next_layer.push(state);
                    }
                }
            }
            layer = next_layer;
            if layer.is_empty() {
                break;
            }
        }
        result
    }

    /// Canonical renumbering by breadth-first traversal from the base with
    /// letter-sorted edges. Linear time; requires a deterministic automaton
    /// with every vertex reachable from the base.
    pub fn canonical_form(&self) -> Result<CanonicalForm, AutomatonError> {
        let mut det: BTreeMap<(usize, Letter), usize> = BTreeMap::new();
        for &(u, l, v) in &self.edges {
            if det.insert((u, l), v).is_some() {
                return Err(AutomatonError::NotDeterministic(u, l));
            }
        }
        let mut order = vec![usize::MAX; self.vertex_count];
        order[self.base] = 0;
        let mut next = 1;
        let mut queue = VecDeque::from([self.base]);
        while let Some(u) = queue.pop_front() {
            for (&(src, _), &v) in det.range(
                (
                    u,
                    Letter {
                        base: 0,
                        inverted: false,
                    },
                )..,
            ) {
                if src != u {
                    break;
                }
                if order[v] == usize::MAX {
                    order[v] = next;
                    next += 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(v) = (0..self.vertex_count).find(|&v| order[v] == usize::MAX) {
            return Err(AutomatonError::Unreachable(v));
        }
        Ok(CanonicalForm {
            vertex_count: self.vertex_count,
            terminals: self.terminals.iter().map(|&t| order[t]).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, l, v)| (order[u], l, order[v]))
                .collect(),
        })
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> AutomatonJson {
        AutomatonJson {
            alphabet: alphabet.symbols().map(str::to_string).collect(),
            vertices: self.vertex_count,
            base: self.base,
            terminals: self.terminals.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, l, v)| (u, alphabet.print_letter(l), v))
                .collect(),
        }
    }

    pub fn from_json(json: &AutomatonJson) -> Result<(Alphabet, Automaton), AutomatonError> {
        let alphabet = Alphabet::new(json.alphabet.iter().cloned())?;
        let mut edges = Vec::new();
        for (u, l, v) in &json.edges {
            edges.push((*u, alphabet.parse_letter(l)?, *v));
        }
        let a = Automaton::new(
            json.vertices,
            json.base,
            json.terminals.iter().copied(),
            edges,
        )?;
        Ok((alphabet, a))
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
        for v in 0..self.vertex_count {
            let shape = if self.terminals.contains(&v) {
                "doublecircle"
            } else {
                "circle"
            };
            let extra = if v == self.base { ", style=bold" } else { "" };
            s.push_str(&format!("  {v} [shape={shape}{extra}];\n"));
        }
        for &(u, l, v) in &self.edges {
            s.push_str(&format!(
                "  {u} -> {v} [label=\"{}\"];\n",
                alphabet.print_letter(l)
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Wire form of an automaton; edge labels use the `a` / `a'` text form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub alphabet: Vec<String>,
    pub vertices: usize,
    pub base: usize,
    pub terminals: Vec<usize>,
    pub edges: Vec<(usize, String, usize)>,
}

/// Renumbered edge/terminal data; two deterministic automata are isomorphic
/// as based labelled graphs iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub terminals: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, Letter, usize)>,
}

/// All stages of the normalization pipeline plus the rank report of the
/// final stage.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub trimmed: Automaton,
    pub a1: Automaton,
    pub a2: Automaton,
    pub a3: Automaton,
    pub a4: Automaton,
    pub report: RankReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub vertex_count: usize,
    /// Directed labelled triples; half of this is the geometric edge count.
    pub edge_count: usize,
    pub terminal_count: usize,
}

impl RankReport {
    pub fn of(a: &Automaton) -> RankReport {
        debug_assert!(
            a.edges.len().is_multiple_of(2),
            "rank report requires a dual automaton"
        );
        RankReport {
            rank: a.edges.len() / 2 + 1 - a.vertex_count,
            vertex_count: a.vertex_count,
            edge_count: a.edges.len(),
            terminal_count: a.terminals.len(),
        }
    }
}

/// The Stallings graph of a finitely generated subgroup of a free group:
/// folded, pruned, terminal set `{q0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsGraph {
    automaton: Automaton,
}

impl StallingsGraph {
    /// Builds the graph of `⟨generators⟩`. Generators are freely reduced
    /// first; empty (trivial) generators are dropped. No generators — or
    /// only trivial ones — give the graph of the trivial subgroup.
    pub fn subgroup(generators: &[Word]) -> StallingsGraph {
        let reduced: Vec<Word> = generators
            .iter()
            .map(Word::free_reduce)
            .filter(|w| !w.is_empty())
            .collect();
        if reduced.is_empty() {
            return StallingsGraph {
                automaton: Automaton {
                    vertex_count: 1,
                    base: 0,
                    terminals: BTreeSet::from([0]),
                    edges: BTreeSet::new(),
                },
            };
        }
        let mut edges = BTreeSet::new();
        let mut next = 1usize;
        for w in &reduced {
            let mut cur = 0usize;
            for (i, &l) in w.letters().iter().enumerate() {
                let target = if i + 1 == w.len() {
                    0
                } else {
                    next += 1;
                    next - 1
                };
                edges.insert((cur, l, target));
                edges.insert((target, l.inverse(), cur));
                cur = target;
            }
        }
        let bouquet = Automaton {
            vertex_count: next,
            base: 0,
            terminals: BTreeSet::from([0]),
            edges,
        };
        let folded = bouquet.fold().expect("bouquet is dual by construction");
        StallingsGraph {
            automaton: folded.prune(),
        }
    }

    /// Wraps an automaton that is already a Stallings graph (used by the
    /// pipeline). Checked in debug builds.
    pub fn from_core_automaton(a: Automaton) -> StallingsGraph {
        debug_assert!(a.is_dual() && a.is_deterministic());
        debug_assert_eq!(a.terminals, BTreeSet::from([a.base]));
        StallingsGraph { automaton: a }
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn rank(&self) -> usize {
        self.rank_report().rank
    }

    pub fn rank_report(&self) -> RankReport {
        RankReport::of(&self.automaton)
    }

    /// Membership of the element represented by `w` (freely reduced first):
    /// trace from the base; accept iff the trace ends at the base.
    pub fn contains(&self, w: &Word) -> bool {
        let det: HashMap<(usize, Letter), usize> = self
            .automaton
            .edges
            .iter()
            .map(|&(u, l, v)| ((u, l), v))
            .collect();
        let mut cur = self.automaton.base;
        for &l in w.free_reduce().letters() {
            match det.get(&(cur, l)) {
                Some(&v) => cur = v,
                None => return false,
            }
        }
        cur == self.automaton.base
    }

    /// A free basis read off a breadth-first spanning tree: one word per
    /// non-tree geometric edge. The basis size equals the rank.
    pub fn basis(&self) -> Vec<Word> {
        let a = &self.automaton;
        let mut path: Vec<Option<Word>> = vec![None; a.vertex_count];
        path[a.base] = Some(Word::empty());
        let mut tree: BTreeSet<(usize, Letter, usize)> = BTreeSet::new();
        let mut queue = VecDeque::from([a.base]);
        while let Some(u) = queue.pop_front() {
            let prefix = path[u].clone().unwrap();
            for &(src, l, v) in a.edges.range(
                (
                    u,
                    Letter {
                        base: 0,
                        inverted: false,
                    },
                    0,
                )..,
            ) {
                if src != u {
                    break;
                }
                if path[v].is_none() {
                    path[v] = Some(prefix.concat(&Word::from_letters(vec![l])));
                    tree.insert((u, l, v));
                    tree.insert((v, l.inverse(), u));
                    queue.push_back(v);
                }
            }
        }
        let mut basis = Vec::new();
        for &(u, l, v) in &a.edges {
            // One representative per geometric edge, skipping the tree.
            if (u, l, v) > (v, l.inverse(), u) || tree.contains(&(u, l, v)) {
                continue;
            }
            let pu = path[u].clone().expect("stallings graph is connected");
            let pv = path[v].clone().expect("stallings graph is connected");
            let w = pu
                .concat(&Word::from_letters(vec![l]))
                .concat(&pv.inverse())
                .free_reduce();
            basis.push(w);
        }
        basis.sort_by(shortlex_cmp);
        basis
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.automaton
            .canonical_form()
            .expect("stallings graphs are deterministic and connected")
    }
}

/// Report for an ascending chain of finitely generated subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub ranks: Vec<usize>,
    /// Least 1-based index `p` with `H_p = H_{p+1} = …` within the prefix
    /// (`p = n` when the chain is still growing at the end).
    pub stabilized_at: usize,
    pub max_rank: usize,
    pub within_bound: bool,
}

/// Verifies that `chain[0] ⊆ chain[1] ⊆ …` (via generator membership),
/// computes all ranks, and locates the stabilization point. Errors at the
/// first non-inclusion with a witness generator.
pub fn chain_check(chain: &[Vec<Word>], max_rank: usize) -> Result<ChainReport, AutomatonError> {
    let graphs: Vec<StallingsGraph> = chain.iter().map(|g| StallingsGraph::subgroup(g)).collect();
    let alphabet_for_errors = Alphabet::latin(26);
    for i in 0..graphs.len().saturating_sub(1) {
        for w in &chain[i] {
            if !graphs[i + 1].contains(w) {
                return Err(AutomatonError::NotAscending {
                    index: i + 1,
                    next: i + 2,
                    witness: alphabet_for_errors.print_word(&w.free_reduce()),
                });
            }
        }
    }
    let ranks: Vec<usize> = graphs.iter().map(StallingsGraph::rank).collect();
    // Given the verified ascent, H_i = H_{i+1} iff the later term's
    // generators already lie in the earlier one.
    let eq: Vec<bool> = (0..graphs.len().saturating_sub(1))
        .map(|i| chain[i + 1].iter().all(|w| graphs[i].contains(w)))
        .collect();
    let mut stabilized_at = chain.len().max(1);
    while stabilized_at > 1 && eq[stabilized_at - 2] {
        stabilized_at -= 1;
    }
    let within_bound = ranks.iter().all(|&r| r <= max_rank);
    Ok(ChainReport {
        ranks,
        stabilized_at,
        max_rank,
        within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::nielsen;

    fn ab() -> Alphabet {
        Alphabet::latin(2)
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn words(ss: &[&str]) -> Vec<Word> {
        ss.iter().map(|s| w(s)).collect()
    }

    fn letter(s: &str) -> Letter {
        ab().parse_letter(s).unwrap()
    }

    #[test]
    fn trim_keeps_successful_paths() {
        // 0 -a-> 1 -b-> 2 (terminal), plus a dead-end 0 -a-> 3... labels
        // must stay deterministic-free here, so use b for the dead end.
        let a = Automaton::new(
            4,
            0,
            [2],
            [
                (0, letter("a"), 1),
                (1, letter("b"), 2),
                (0, letter("b"), 3),
            ],
        )
        .unwrap();
        let t = a.trim();
        assert_eq!(t.vertex_count(), 3);
        assert!(t.is_trim());
        assert_eq!(t.edge_count(), 2);
    }

    #[test]
    fn trim_empty_language_is_degenerate() {
        let a = Automaton::new(2, 0, [1], [(1, letter("a"), 0)]).unwrap();
        assert!(!a.has_successful_path());
        let t = a.trim();
        assert_eq!(t.vertex_count(), 1);
        assert!(t.terminals().is_empty());
        assert!(!t.has_successful_path());
    }

    #[test]
    fn trim_keeps_base_loop_automaton() {
        let a = Automaton::new(1, 0, [0], [(0, letter("a"), 0)]).unwrap();
        assert_eq!(a.trim(), a);
    }

    #[test]
    fn pipeline_two_loops_has_rank_two() {
        let a = Automaton::new(1, 0, [0], [(0, letter("a"), 0), (0, letter("b"), 0)]).unwrap();
        let p = a.pipeline().unwrap();
        assert_eq!(p.report.rank, 2);
        assert_eq!(p.a4.vertex_count(), 1);
        assert_eq!(p.a4.edge_count(), 4);
    }

    #[test]
    fn pipeline_empty_language_errors() {
        let a = Automaton::new(2, 0, [], [(0, letter("a"), 1)]).unwrap();
        assert!(matches!(a.pipeline(), Err(AutomatonError::EmptyLanguage)));
    }

    #[test]
    fn pipeline_stage_shapes() {
        // Petals for aa and ab sharing only the base, with terminals {0}.
        let g = StallingsGraph::subgroup(&words(&["a a", "a b"]));
        let a = g.automaton();
        assert_eq!(a.vertex_count(), 2);
        assert_eq!(a.edge_count(), 6);
        assert_eq!(g.rank(), 2);

        // The same subgroup through the pipeline entry point.
        let bouquet = Automaton::new(
            3,
            0,
            [0],
            [
                (0, letter("a"), 1),
                (1, letter("a"), 0),
                (0, letter("a"), 2),
                (2, letter("b"), 0),
            ],
        )
        .unwrap();
        let p = bouquet.pipeline().unwrap();
        assert!(p.a2.is_dual() && p.a2.is_trim());
        assert!(p.a3.is_deterministic());
        assert_eq!(p.report.rank, 2);
        assert_eq!(
            p.a4.canonical_form().unwrap(),
            g.automaton().canonical_form().unwrap()
        );
    }

    #[test]
    fn fold_is_order_invariant_on_examples() {
        let g = StallingsGraph::subgroup(&words(&["a a", "a b"]));
        let bouquet = {
            let mut edges = BTreeSet::new();
            for (u, l, v) in [
                (0usize, letter("a"), 1usize),
                (1, letter("a"), 0),
                (0, letter("a"), 2),
                (2, letter("b"), 0),
            ] {
                edges.insert((u, l, v));
                edges.insert((v, l.inverse(), u));
            }
            Automaton::new(3, 0, [0], edges).unwrap()
        };
        for seed in 0..20 {
            let folded = bouquet.fold_seeded(seed).unwrap().prune();
            assert_eq!(
                folded.canonical_form().unwrap(),
                g.automaton().canonical_form().unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn fold_requires_dual() {
        let a = Automaton::new(2, 0, [0], [(0, letter("a"), 1)]).unwrap();
        assert!(matches!(a.fold(), Err(AutomatonError::NotDual(..))));
    }

    #[test]
    fn fold_idempotent() {
        let g = StallingsGraph::subgroup(&words(&["a a", "a b", "b a b"]));
        let once = g.automaton().clone();
        let twice = once.fold().unwrap();
        assert_eq!(
            once.canonical_form().unwrap(),
            twice.canonical_form().unwrap()
        );
    }

    #[test]
    fn subgroup_examples() {
        assert_eq!(StallingsGraph::subgroup(&[]).rank(), 0);
        assert_eq!(StallingsGraph::subgroup(&words(&["a a'"])).rank(), 0);
        assert_eq!(StallingsGraph::subgroup(&words(&["a", "b"])).rank(), 2);
        let g = StallingsGraph::subgroup(&words(&["a a", "b", "a b a'"]));
        assert_eq!(g.rank(), 3);
        assert_eq!(g.automaton().vertex_count(), 2);
    }

    #[test]
    fn membership_examples() {
        let g = StallingsGraph::subgroup(&words(&["a a", "a b"]));
        assert!(g.contains(&w("a a")));
        assert!(g.contains(&w("a b a b")));
        // a²·(ab)⁻¹ = a·a·b⁻¹·a⁻¹
        assert!(g.contains(&w("a a b' a'")));
        assert!(!g.contains(&w("a")));
        assert!(!g.contains(&w("b")));
        assert!(g.contains(&w("")));
    }

    #[test]
    fn membership_traces_unreduced_inputs() {
        let g = StallingsGraph::subgroup(&words(&["a a"]));
        assert!(g.contains(&w("a b b' a")));
    }

    #[test]
    fn basis_matches_rank_and_membership() {
        for gens in [
            vec!["a a", "a b"],
            vec!["a a", "b", "a b a'"],
            vec!["a b a' b'"],
            vec!["a", "b a b'"],
        ] {
            let g = StallingsGraph::subgroup(&words(&gens));
            let basis = g.basis();
            assert_eq!(basis.len(), g.rank());
            for b in &basis {
                assert!(g.contains(b), "basis word not in subgroup");
            }
            // The basis regenerates the same subgroup.
            let h = StallingsGraph::subgroup(&basis);
            assert_eq!(g.canonical_form(), h.canonical_form());
        }
    }

    #[test]
    fn ragr_bound_examples() {
        // Trim case: two loops at the base.
        let a = Automaton::new(1, 0, [0], [(0, letter("a"), 0), (0, letter("b"), 0)]).unwrap();
        assert_eq!(a.ragr_bound(), 2);
        assert!(a.pipeline().unwrap().report.rank <= 2);

        // Non-trim case falls back to |E|.
        let b = Automaton::new(3, 0, [1], [(0, letter("a"), 1), (2, letter("b"), 2)]).unwrap();
        assert!(!b.is_trim());
        assert_eq!(b.ragr_bound(), 2);
    }

    #[test]
    fn rank_formula_matches_nielsen_on_samples() {
        let cases: Vec<Vec<&str>> = vec![
            vec!["a a", "a b"],
            vec!["a a", "b", "a b a'"],
            vec!["a b", "b' a", "a' a'"],
            vec!["a b a' b'"],
            vec!["a a a", "a a"],
            vec!["a", "a"],
        ];
        for gens in cases {
            let ws = words(&gens);
            let g = StallingsGraph::subgroup(&ws);
            let (rank, _) = nielsen::rank(&ws);
            assert_eq!(g.rank(), rank, "generators {gens:?}");
        }
    }

    #[test]
    fn pipeline_language_generates_same_subgroup() {
        // The subgroup generated by the (reduced) successful-path labels of
        // a trim automaton equals the subgroup of its pipeline core. Short
        // labels suffice once the automaton has ≤ 4 vertices.
        let automata = vec![
            Automaton::new(
                3,
                0,
                [0, 2],
                [
                    (0, letter("a"), 1),
                    (1, letter("b"), 2),
                    (2, letter("a"), 0),
                    (1, letter("a"), 1),
                ],
            )
            .unwrap(),
            Automaton::new(
                2,
                0,
                [1],
                [
                    (0, letter("a"), 1),
                    (1, letter("b"), 0),
                    (1, letter("a"), 1),
                ],
            )
            .unwrap(),
        ];
        for a in automata {
            let trimmed = a.trim();
            assert!(trimmed.is_trim());
            let p = a.pipeline().unwrap();
            let labels: Vec<Word> = trimmed.language_words(10).into_iter().collect();
            let from_labels = StallingsGraph::subgroup(&labels);
            let core = StallingsGraph::from_core_automaton(p.a4.clone());
            assert_eq!(from_labels.canonical_form(), core.canonical_form());
        }
    }

    #[test]
    fn monotone_rank_bounds() {
        let a = Automaton::new(
            3,
            0,
            [0, 2],
            [
                (0, letter("a"), 1),
                (1, letter("b"), 2),
                (2, letter("a"), 0),
                (1, letter("a"), 1),
            ],
        )
        .unwrap();
        let p = a.pipeline().unwrap();
        assert!(p.report.rank <= a.trim().ragr_bound());
        assert!(a.trim().ragr_bound() <= a.edge_count());
    }

    #[test]
    fn chain_check_reports_stabilization() {
        // ⟨a²⟩ ⊆ ⟨a⟩ ⊆ ⟨a⟩: grows once, then stabilizes.
        let chain = vec![words(&["a a"]), words(&["a"]), words(&["a"])];
        let r = chain_check(&chain, 3).unwrap();
        assert_eq!(r.ranks, vec![1, 1, 1]);
        assert_eq!(r.stabilized_at, 2);
        assert!(r.within_bound);

        // Two-term growing chain stabilizes only at the end.
        let r = chain_check(&[words(&["a a"]), words(&["a"])], 1).unwrap();
        assert_eq!(r.stabilized_at, 2);

        // Constant chain stabilizes at 1.
        let r = chain_check(&[words(&["a"]), words(&["a"])], 1).unwrap();
        assert_eq!(r.stabilized_at, 1);
    }

    #[test]
    fn chain_check_rejects_non_ascending() {
        let chain = vec![words(&["a a"]), words(&["a a a a"])];
        match chain_check(&chain, 5) {
            Err(AutomatonError::NotAscending {
                index,
                next,
                witness,
            }) => {
                assert_eq!((index, next), (1, 2));
                assert_eq!(witness, "a a");
            }
            other => panic!("expected ascent violation, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let alphabet = ab();
        let g = StallingsGraph::subgroup(&words(&["a a", "a b"]));
        let json = g.automaton().to_json(&alphabet);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: AutomatonJson = serde_json::from_str(&text).unwrap();
        let (ab2, a2) = Automaton::from_json(&parsed).unwrap();
        assert_eq!(ab2, alphabet);
        assert_eq!(&a2, g.automaton());
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let alphabet = ab();
        let g = StallingsGraph::subgroup(&words(&["a b"]));
        let dot = g.automaton().to_dot(&alphabet);
        assert!(dot.contains("digraph"));
        assert_eq!(dot.matches(" -> ").count(), g.automaton().edge_count());
    }
}
