//! Finitely presented monoids and semigroups whose relations preserve
//! length. Length preservation makes every congruence class finite, so the
//! word problem is decided by exhaustive class search, elements are named
//! by shortlex-least representatives, and endomorphism fixed points can be
//! enumerated length by length together with their indecomposable
//! generators and eventual periodicity data.

pub mod rewrite;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps;
use crate::orbit;
use crate::util::lcm;
use crate::words::{Alphabet, WordError};

/// A word as letter indices into the presentation's alphabet.
pub type MWord = Vec<u8>;

const MAX_LETTERS: usize = 32;

/// Route switch for fixed-point enumeration: below this many words the
/// whole canonical-form table fits comfortably in memory.
const TABLE_WORD_LIMIT: usize = 200_000;

#[derive(Debug, Error)]
pub enum MonoidError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("alphabet has {0} letters; the limit is {MAX_LETTERS}")]
    AlphabetTooLarge(usize),
    #[error("letter #{0} is outside the alphabet of {1} symbols")]
    LetterOutOfRange(usize, usize),
    #[error("relation #{index} does not preserve length: {left} = {right}")]
    NotBalanced {
        index: usize,
        left: String,
        right: String,
    },
    #[error("the empty word is not a semigroup element")]
    EmptyWord,
    #[error("congruence class search exceeded the cap of {cap} words")]
    ClassCapExceeded { cap: usize },
    #[error("expected images for {expected} generators, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("relation #{relation} is not preserved: the sides map to {left} ≠ {right}")]
    NotAnEndomorphism {
        relation: usize,
        left: String,
        right: String,
    },
    #[error("the orbit of {word} left the verification budget; the result would be incomplete")]
    OrbitUndetermined { word: String },
    #[error(transparent)]
    Words(#[from] WordError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Monoid,
    Semigroup,
}

/// A presentation with length-preserving relations. Congruence classes are
/// finite and length-homogeneous, so shortlex-least and lex-least coincide
/// on each class.
#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    flavor: Flavor,
    relations: Vec<(MWord, MWord)>,
}

/// Wire form of a presentation; words are in the same text syntax as
/// [`Presentation::parse_mword`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationJson {
    pub flavor: String,
    pub alphabet: Vec<String>,
    pub relations: Vec<(String, String)>,
}

/// A validated endomorphism, stored as one image word per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    images: Vec<MWord>,
}

impl Endo {
    pub fn images(&self) -> &[MWord] {
        &self.images
    }

    pub fn image_of(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn image_lengths(&self) -> Vec<usize> {
        self.images.iter().map(|w| w.len()).collect()
    }

    /// Whether every generator image is a single letter, so the
    /// endomorphism preserves length exactly.
    pub fn is_letter_to_letter(&self) -> bool {
        self.images.iter().all(|w| w.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixReport {
    pub length_bound: usize,
    /// Fixed canonical words of length 1..=length_bound, shortlex order.
    pub fixed: Vec<MWord>,
    /// Fixed words with no factorization into two shorter nonempty fixed
    /// elements, checked over every member of the congruence class.
    pub indecomposables: Vec<MWord>,
    pub rank_at_l: usize,
}

/// Orbit of one generator under iterated application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LetterOrbit {
    /// `aφ^{m+p} = aφ^m` with `p` the exact cycle length.
    Periodic { preperiod: usize, period: usize },
    /// Image lengths passed the search cap; unbounded as far as searched.
    Unbounded { step: usize, length: usize },
    /// Neither a repeat nor a length blow-up within the step budget.
    Unresolved { steps: usize },
}

#[derive(Clone, Debug)]
pub struct PerReport {
    pub length_bound: usize,
    pub window: usize,
    /// Least `k` with every found period dividing `k!`; `None` when some
    /// orbit was undetermined.
    pub stationary_at: Option<usize>,
    /// Stabilization was both found and lies within the window.
    pub stabilized_in_window: bool,
    /// Periodic canonical words of length 1..=length_bound, shortlex order.
    pub per: Vec<MWord>,
    /// Least period of each entry of `per`, in parallel.
    pub periods: Vec<u64>,
    pub generator_orbits: Vec<LetterOrbit>,
    pub indecomposables: Vec<MWord>,
    /// Least common multiple of the periods of the indecomposables.
    pub period_bound: u64,
    /// Words whose orbit left every verification budget. Always surfaced,
    /// never silently dropped.
    pub undetermined: Vec<MWord>,
}

/// Exact least periods of every canonical word up to a length bound.
#[derive(Clone, Debug)]
pub struct OrbitPeriods {
    pub periodic: Vec<(MWord, u64)>,
    pub undetermined: Vec<MWord>,
}

/// Canonical forms of every word up to a length bound, plus the member
/// lists of each class. Built once, then all lookups are O(1).
#[derive(Clone, Debug)]
pub struct CanonTable {
    len_bound: usize,
    map: HashMap<MWord, MWord>,
    members: HashMap<MWord, Vec<MWord>>,
    canonicals: Vec<MWord>,
    positions: HashMap<MWord, usize>,
}

impl CanonTable {
    pub fn len_bound(&self) -> usize {
        self.len_bound
    }

    pub fn canonical_of(&self, w: &[u8]) -> Option<&MWord> {
        self.map.get(w)
    }

    pub fn members_of(&self, canonical: &[u8]) -> Option<&[MWord]> {
        self.members.get(canonical).map(|v| v.as_slice())
    }

    /// Nonempty canonical words in shortlex order.
    pub fn canonicals(&self) -> &[MWord] {
        &self.canonicals
    }

    /// Index of a nonempty canonical word in [`Self::canonicals`].
    pub fn position_of(&self, canonical: &[u8]) -> Option<usize> {
        self.positions.get(canonical).copied()
    }
}

fn word_count(letters: usize, len: usize) -> usize {
    let mut total = 1usize;
    let mut layer = 1usize;
    for _ in 0..len {
        layer = match layer.checked_mul(letters) {
            Some(l) => l,
            None => return usize::MAX,
        };
        total = match total.checked_add(layer) {
            Some(t) => t,
            None => return usize::MAX,
        };
    }
    total
}

impl Presentation {
    pub fn new(
        flavor: Flavor,
        alphabet: Alphabet,
        relations: Vec<(MWord, MWord)>,
    ) -> Result<Presentation, MonoidError> {
        if alphabet.len() > MAX_LETTERS {
            return Err(MonoidError::AlphabetTooLarge(alphabet.len()));
        }
        let p = Presentation {
            alphabet,
            flavor,
            relations: Vec::new(),
        };
        let mut checked = Vec::with_capacity(relations.len());
        for (index, (u, v)) in relations.into_iter().enumerate() {
            p.check_mword(&u)?;
            p.check_mword(&v)?;
            if u.len() != v.len() {
                return Err(MonoidError::NotBalanced {
                    index,
                    left: p.print_mword(&u),
                    right: p.print_mword(&v),
                });
            }
            checked.push((u, v));
        }
        Ok(Presentation {
            relations: checked,
            ..p
        })
    }

    /// Text form: `monoid a b c ; cac = cbc ; …` — flavor, generator names,
    /// then `=`-relations, all separated by `;`.
    pub fn parse(text: &str) -> Result<Presentation, MonoidError> {
        let mut segments = text.split(';');
        let head = segments.next().unwrap_or("");
        let mut toks = head.split_whitespace();
        let flavor = match toks.next() {
            Some("monoid") => Flavor::Monoid,
            Some("semigroup") => Flavor::Semigroup,
            other => {
                return Err(MonoidError::Parse(format!(
                    "expected `monoid` or `semigroup`, found {:?}",
                    other.unwrap_or("")
                )))
            }
        };
        let names: Vec<&str> = toks.collect();
        if names.is_empty() {
            return Err(MonoidError::Parse("no generators listed".into()));
        }
        let alphabet =
            Alphabet::new(names.iter().map(|s| s.to_string())).map_err(MonoidError::Words)?;
        let shell = Presentation {
            alphabet,
            flavor,
            relations: Vec::new(),
        };
        let mut relations = Vec::new();
        for seg in segments {
            if seg.trim().is_empty() {
                continue;
            }
            let sides: Vec<&str> = seg.split('=').collect();
            if sides.len() != 2 {
                return Err(MonoidError::Parse(format!(
                    "relation `{}` needs exactly one `=`",
                    seg.trim()
                )));
            }
            relations.push((shell.parse_mword(sides[0])?, shell.parse_mword(sides[1])?));
        }
        Presentation::new(flavor, shell.alphabet, relations)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from(match self.flavor {
            Flavor::Monoid => "monoid",
            Flavor::Semigroup => "semigroup",
        });
        for name in self.alphabet.symbols() {
            out.push(' ');
            out.push_str(name);
        }
        for (u, v) in &self.relations {
            out.push_str(" ; ");
            out.push_str(&self.print_mword(u));
            out.push_str(" = ");
            out.push_str(&self.print_mword(v));
        }
        out
    }

    pub fn from_json(json: &PresentationJson) -> Result<Presentation, MonoidError> {
        let flavor = match json.flavor.as_str() {
            "monoid" => Flavor::Monoid,
            "semigroup" => Flavor::Semigroup,
            other => return Err(MonoidError::Parse(format!("unknown flavor `{other}`"))),
        };
        let alphabet = Alphabet::new(json.alphabet.iter().cloned()).map_err(MonoidError::Words)?;
        let shell = Presentation {
            alphabet,
            flavor,
            relations: Vec::new(),
        };
        let relations = json
            .relations
            .iter()
            .map(|(u, v)| Ok((shell.parse_mword(u)?, shell.parse_mword(v)?)))
            .collect::<Result<Vec<_>, MonoidError>>()?;
        Presentation::new(flavor, shell.alphabet, relations)
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            flavor: match self.flavor {
                Flavor::Monoid => "monoid".into(),
                Flavor::Semigroup => "semigroup".into(),
            },
            alphabet: self.alphabet.symbols().map(String::from).collect(),
            relations: self
                .relations
                .iter()
                .map(|(u, v)| (self.print_mword(u), self.print_mword(v)))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn relations(&self) -> &[(MWord, MWord)] {
        &self.relations
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    fn check_mword(&self, w: &[u8]) -> Result<(), MonoidError> {
        for &a in w {
            if a as usize >= self.alphabet.len() {
                return Err(MonoidError::LetterOutOfRange(
                    a as usize,
                    self.alphabet.len(),
                ));
            }
        }
        Ok(())
    }

    /// Accepts whitespace-separated letter names, contiguous single-char
    /// names (`cac`), or `1` for the empty word.
    pub fn parse_mword(&self, text: &str) -> Result<MWord, MonoidError> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks == ["1"] || toks.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for tok in toks {
            if let Some(base) = self.alphabet.base(tok) {
                out.push(base as u8);
            } else {
                for ch in tok.chars() {
                    let base = self.alphabet.base(&ch.to_string()).ok_or_else(|| {
                        MonoidError::Parse(format!("unknown letter `{ch}` in `{tok}`"))
                    })?;
                    out.push(base as u8);
                }
            }
        }
        Ok(out)
    }

    pub fn print_mword(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let single = self.alphabet.symbols().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = w
            .iter()
            .map(|&a| self.alphabet.name(a as u32).unwrap_or("?"))
            .collect();
        parts.join(if single { "" } else { " " })
    }

    /// One-step neighbors: every replacement of one relation side by the
    /// other at one position.
    fn neighbors(&self, w: &[u8], out: &mut Vec<MWord>) {
        out.clear();
        for (u, v) in &self.relations {
            for (from, to) in [(u, v), (v, u)] {
                if from.is_empty() || from.len() > w.len() {
                    continue;
                }
                for i in 0..=w.len() - from.len() {
                    if &w[i..i + from.len()] == from.as_slice() {
                        let mut next = w.to_vec();
                        next[i..i + from.len()].copy_from_slice(to);
                        out.push(next);
                    }
                }
            }
        }
    }

    /// Search the class of `w`. `stop` short-circuits: on a member for
    /// which it returns true the search ends early with that member.
    fn class_search(
        &self,
        w: &[u8],
        cap: usize,
        mut stop: impl FnMut(&[u8]) -> bool,
    ) -> Result<(HashSet<MWord>, Option<MWord>), MonoidError> {
        let mut seen: HashSet<MWord> = HashSet::new();
        seen.insert(w.to_vec());
        if stop(w) {
            return Ok((seen, Some(w.to_vec())));
        }
        let mut queue: VecDeque<MWord> = VecDeque::from([w.to_vec()]);
        let mut buf = Vec::new();
        while let Some(cur) = queue.pop_front() {
            self.neighbors(&cur, &mut buf);
            for next in buf.drain(..) {
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(MonoidError::ClassCapExceeded { cap });
                }
                if stop(&next) {
                    seen.insert(next.clone());
                    return Ok((seen, Some(next)));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Ok((seen, None))
    }

    /// All words congruent to `w`; finite because relations preserve
    /// length.
    pub fn congruence_class(&self, w: &[u8], cap: usize) -> Result<BTreeSet<MWord>, MonoidError> {
        self.check_mword(w)?;
        if self.flavor == Flavor::Semigroup && w.is_empty() {
            return Err(MonoidError::EmptyWord);
        }
        let (set, _) = self.class_search(w, cap, |_| false)?;
        Ok(set.into_iter().collect())
    }

    /// Shortlex-least member of the class of `w`.
    pub fn canonical(&self, w: &[u8], cap: usize) -> Result<MWord, MonoidError> {
        self.check_mword(w)?;
        if self.flavor == Flavor::Semigroup && w.is_empty() {
            return Err(MonoidError::EmptyWord);
        }
        let (set, _) = self.class_search(w, cap, |_| false)?;
        // All members share one length, so lex-least is shortlex-least.
        Ok(set.into_iter().min().expect("class contains w"))
    }

    /// True iff `w` is the least member of its class. Exits early on the
    /// first smaller member found.
    pub fn is_canonical(&self, w: &[u8], cap: usize) -> Result<bool, MonoidError> {
        self.check_mword(w)?;
        let (_, smaller) = self.class_search(w, cap, |m| m < w)?;
        Ok(smaller.is_none())
    }

    pub fn equal(&self, w1: &[u8], w2: &[u8], cap: usize) -> Result<bool, MonoidError> {
        self.check_mword(w1)?;
        self.check_mword(w2)?;
        if self.flavor == Flavor::Semigroup && (w1.is_empty() || w2.is_empty()) {
            return Err(MonoidError::EmptyWord);
        }
        if w1.len() != w2.len() {
            return Ok(false);
        }
        let (_, hit) = self.class_search(w1, cap, |m| m == w2)?;
        Ok(hit.is_some())
    }

    /// Calls `f` on every nonempty canonical word of length ≤ `l`, in
    /// depth-first letter order.
    ///
    /// Pruning is sound because canonicity is inherited by prefixes: if a
    /// prefix p has a smaller congruent word p′, then p′s ≡ ps is smaller
    /// than ps (same length, smaller prefix), so ps is not canonical.
    pub fn for_each_canonical(
        &self,
        l: usize,
        cap: usize,
        f: &mut impl FnMut(&[u8]),
    ) -> Result<(), MonoidError> {
        let mut prefix = Vec::with_capacity(l);
        self.canonical_walk(&mut prefix, l, cap, f)
    }

    fn canonical_walk(
        &self,
        prefix: &mut MWord,
        l: usize,
        cap: usize,
        f: &mut impl FnMut(&[u8]),
    ) -> Result<(), MonoidError> {
        if !prefix.is_empty() {
            if !self.is_canonical(prefix, cap)? {
                return Ok(());
            }
            f(prefix);
        }
        if prefix.len() < l {
            for a in 0..self.alphabet.len() as u8 {
                prefix.push(a);
                self.canonical_walk(prefix, l, cap, f)?;
                prefix.pop();
            }
        }
        Ok(())
    }

    /// Nonempty canonical words of length ≤ `l` in shortlex order.
    pub fn canonical_words_up_to(&self, l: usize, cap: usize) -> Result<Vec<MWord>, MonoidError> {
        let mut out = Vec::new();
        self.for_each_canonical(l, cap, &mut |w| out.push(w.to_vec()))?;
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Canonical form of every word of length ≤ `l` in one pass: words are
    /// visited in shortlex order, so the first member of each class seen is
    /// its least member.
    pub fn canonical_table_up_to(&self, l: usize, cap: usize) -> Result<CanonTable, MonoidError> {
        let mut map: HashMap<MWord, MWord> = HashMap::new();
        let mut members: HashMap<MWord, Vec<MWord>> = HashMap::new();
        let mut canonicals: Vec<MWord> = Vec::new();
        if self.flavor == Flavor::Monoid {
            map.insert(Vec::new(), Vec::new());
            members.insert(Vec::new(), vec![Vec::new()]);
        }
        let mut layer: Vec<MWord> = vec![Vec::new()];
        for _ in 0..l {
            let mut next_layer = Vec::with_capacity(layer.len() * self.alphabet.len());
            for w in &layer {
                for a in 0..self.alphabet.len() as u8 {
                    let mut word = w.clone();
                    word.push(a);
                    next_layer.push(word);
                }
            }
            for w in &next_layer {
                if map.contains_key(w) {
                    continue;
                }
                let (class, _) = self.class_search(w, cap, |_| false)?;
                let mut sorted: Vec<MWord> = class.into_iter().collect();
                sorted.sort();
                debug_assert_eq!(
                    &sorted[0], w,
                    "shortlex scan must reach the least member first"
                );
                for m in &sorted {
                    map.insert(m.clone(), w.clone());
                }
                members.insert(w.clone(), sorted);
                canonicals.push(w.clone());
            }
            layer = next_layer;
        }
        let positions = canonicals
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(CanonTable {
            len_bound: l,
            map,
            members,
            canonicals,
            positions,
        })
    }

    /// All classes weakly above `w` in the factor (two-sided divisibility)
    /// order: classes of factors of any member of `w`'s class. Finite
    /// because classes are finite and length-bounded.
    pub fn j_above(&self, w: &[u8], cap: usize) -> Result<BTreeSet<MWord>, MonoidError> {
        let class = self.congruence_class(w, cap)?;
        let mut out: BTreeSet<MWord> = BTreeSet::new();
        if self.flavor == Flavor::Monoid {
            out.insert(Vec::new());
        }
        let mut done: HashSet<MWord> = HashSet::new();
        for m in &class {
            for i in 0..m.len() {
                for j in i + 1..=m.len() {
                    let factor = m[i..j].to_vec();
                    if done.insert(factor.clone()) {
                        out.insert(self.canonical(&factor, cap)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Concatenation of generator images; no canonicalization.
    pub fn apply(&self, phi: &Endo, w: &[u8]) -> MWord {
        let mut out = Vec::with_capacity(w.len());
        for &a in w {
            out.extend_from_slice(phi.image_of(a));
        }
        out
    }

    /// Text form `a -> b ; b -> a ; c -> c`; every generator needs an
    /// image. The result is unvalidated — pass it to [`validate_endo`].
    ///
    /// [`validate_endo`]: Presentation::validate_endo
    pub fn parse_endo(&self, text: &str) -> Result<Vec<MWord>, MonoidError> {
        let mut images: Vec<Option<MWord>> = vec![None; self.alphabet.len()];
        for seg in text.split(';') {
            if seg.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = seg.split("->").collect();
            if parts.len() != 2 {
                return Err(MonoidError::Parse(format!(
                    "image `{}` needs exactly one `->`",
                    seg.trim()
                )));
            }
            let name = parts[0].trim();
            let base = self
                .alphabet
                .base(name)
                .ok_or_else(|| MonoidError::Parse(format!("unknown generator `{name}`")))?;
            images[base as usize] = Some(self.parse_mword(parts[1])?);
        }
        images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| {
                    MonoidError::Parse(format!(
                        "no image for generator `{}`",
                        self.alphabet.name(i as u32).unwrap_or("?")
                    ))
                })
            })
            .collect()
    }

    pub fn print_endo(&self, phi: &Endo) -> String {
        phi.images
            .iter()
            .enumerate()
            .map(|(i, w)| {
                format!(
                    "{} -> {}",
                    self.alphabet.name(i as u32).unwrap_or("?"),
                    self.print_mword(w)
                )
            })
            .collect::<Vec<_>>()
            .join(" ; ")
    }

    /// A generator map extends to an endomorphism iff it sends both sides
    /// of every relation to the same element; this checks exactly that.
    pub fn validate_endo(&self, images: Vec<MWord>) -> Result<Endo, MonoidError> {
        if images.len() != self.alphabet.len() {
            return Err(MonoidError::WrongImageCount {
                expected: self.alphabet.len(),
                got: images.len(),
            });
        }
        for img in &images {
            self.check_mword(img)?;
            if self.flavor == Flavor::Semigroup && img.is_empty() {
                return Err(MonoidError::EmptyWord);
            }
        }
        let phi = Endo { images };
        let cap = caps::search_cap();
        for (relation, (u, v)) in self.relations.iter().enumerate() {
            let iu = self.apply(&phi, u);
            let iv = self.apply(&phi, v);
            if !self.equal(&iu, &iv, cap)? {
                return Err(MonoidError::NotAnEndomorphism {
                    relation,
                    left: self.print_mword(&self.canonical(&iu, cap)?),
                    right: self.print_mword(&self.canonical(&iv, cap)?),
                });
            }
        }
        Ok(phi)
    }

    pub fn identity_endo(&self) -> Endo {
        Endo {
            images: (0..self.alphabet.len() as u8).map(|a| vec![a]).collect(),
        }
    }

    /// Fixed canonical words of length ≤ the table bound, by table lookup
    /// only: `wφ` has the same length as `w` whenever they can be equal, so
    /// every comparison stays inside the table.
    pub fn fix_with_table(&self, phi: &Endo, table: &CanonTable) -> FixReport {
        let img_len = phi.image_lengths();
        let mut fixed: Vec<MWord> = Vec::new();
        for w in table.canonicals() {
            let image_len: usize = w.iter().map(|&a| img_len[a as usize]).sum();
            if image_len != w.len() {
                continue;
            }
            let image = self.apply(phi, w);
            if table.canonical_of(&image) == Some(w) {
                fixed.push(w.clone());
            }
        }
        let fixed_set: HashSet<&MWord> = fixed.iter().collect();
        let is_fixed = |part: &[u8]| -> bool {
            table
                .canonical_of(part)
                .map(|c| fixed_set.contains(c))
                .unwrap_or(false)
        };
        let indecomposables: Vec<MWord> = fixed
            .iter()
            .filter(|w| {
                let members = table.members_of(w).expect("canonical is tabled");
                !members
                    .iter()
                    .any(|m| (1..m.len()).any(|i| is_fixed(&m[..i]) && is_fixed(&m[i..])))
            })
            .cloned()
            .collect();
        FixReport {
            length_bound: table.len_bound(),
            rank_at_l: indecomposables.len(),
            fixed,
            indecomposables,
        }
    }

    /// Fixed canonical words of length 1..=l with indecomposables. Uses a
    /// full canonical table when the word count is small, otherwise a
    /// prefix-pruned scan with per-class search.
    pub fn fix_up_to(&self, phi: &Endo, l: usize, cap: usize) -> Result<FixReport, MonoidError> {
        if word_count(self.alphabet.len(), l) <= TABLE_WORD_LIMIT {
            let table = self.canonical_table_up_to(l, cap)?;
            return Ok(self.fix_with_table(phi, &table));
        }
        let img_len = phi.image_lengths();
        let mut fixed: Vec<MWord> = Vec::new();
        let mut error: Option<MonoidError> = None;
        self.for_each_canonical(l, cap, &mut |w| {
            if error.is_some() {
                return;
            }
            let image_len: usize = w.iter().map(|&a| img_len[a as usize]).sum();
            if image_len != w.len() {
                return;
            }
            let image = self.apply(phi, w);
            match self.canonical(&image, cap) {
                Ok(c) => {
                    if c == w {
                        fixed.push(w.to_vec());
                    }
                }
                Err(e) => error = Some(e),
            }
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        fixed.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let indecomposables = self.indecomposables_in(&fixed, cap)?;
        Ok(FixReport {
            length_bound: l,
            rank_at_l: indecomposables.len(),
            fixed,
            indecomposables,
        })
    }

    /// Members of `set` with no two-way factorization into shorter nonempty
    /// members, checked across all congruence-class members of each word.
    /// `set` must be closed downward in the sense that any fixed word
    /// shorter than a member is also in `set`.
    fn indecomposables_in(&self, set: &[MWord], cap: usize) -> Result<Vec<MWord>, MonoidError> {
        let in_set: HashSet<&MWord> = set.iter().collect();
        let mut canon_cache: HashMap<MWord, MWord> = HashMap::new();
        let mut out = Vec::new();
        for w in set {
            let members = self.congruence_class(w, cap)?;
            let mut decomposable = false;
            'members: for m in &members {
                for i in 1..m.len() {
                    let mut halves_fixed = true;
                    for part in [&m[..i], &m[i..]] {
                        let c = match canon_cache.get(part) {
                            Some(c) => c.clone(),
                            None => {
                                let c = self.canonical(part, cap)?;
                                canon_cache.insert(part.to_vec(), c.clone());
                                c
                            }
                        };
                        if !in_set.contains(&c) {
                            halves_fixed = false;
                            break;
                        }
                    }
                    if halves_fixed {
                        decomposable = true;
                        break 'members;
                    }
                }
            }
            if !decomposable {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    /// Letters whose iterated image is eventually empty: a letter shrinks
    /// iff every letter of its image shrinks (vacuously for an empty
    /// image). Every other letter contributes at least one letter to every
    /// iterate, and its image keeps at least one non-shrinking letter, so
    /// the count of non-shrinking letters never decreases along an orbit.
    fn shrinking_letters(&self, phi: &Endo) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut shrinks = vec![false; k];
        loop {
            let mut changed = false;
            for a in 0..k {
                if !shrinks[a] && phi.images[a].iter().all(|&x| shrinks[x as usize]) {
                    shrinks[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return shrinks;
            }
        }
    }

    /// Follows `w, wφ, wφ², …` looking for a repeat. Words inside the
    /// canonicalizer's reach are compared as classes; beyond it the raw
    /// word stands in for its class, and a raw repeat is still a sound
    /// class repeat (just possibly a late one). The two key spaces never
    /// collide, because everything short enough gets canonicalized.
    fn walk_orbit(
        &self,
        phi: &Endo,
        start: &[u8],
        max_steps: usize,
        max_len: usize,
        mut canon: impl FnMut(&[u8]) -> Option<MWord>,
    ) -> OrbitWalk {
        let mut cur = match canon(start) {
            Some(c) => c,
            None => return OrbitWalk::Undetermined,
        };
        let mut seen: HashMap<MWord, usize> = HashMap::from([(cur.clone(), 0)]);
        for step in 1..=max_steps {
            cur = self.apply(phi, &cur);
            if cur.len() > max_len {
                return OrbitWalk::LengthExceeded {
                    step,
                    length: cur.len(),
                };
            }
            if let Some(c) = canon(&cur) {
                cur = c;
            }
            if let Some(&first) = seen.get(&cur) {
                return OrbitWalk::EntersCycle {
                    preperiod: first,
                    period: step - first,
                };
            }
            seen.insert(cur.clone(), step);
        }
        OrbitWalk::Undetermined
    }

    /// Per-generator orbit data: the least observed `(m, p)` with
    /// `aφ^{m+p} = aφ^m`, or an unbounded/unresolved report.
    pub fn eventual_period(
        &self,
        phi: &Endo,
        search_cap: usize,
    ) -> Result<Vec<LetterOrbit>, MonoidError> {
        let class_cap = caps::search_cap();
        // Class-level comparison is a bounded-length luxury; repeats of
        // longer iterates are still caught through the raw words.
        let canon_len = 16;
        self.letter_orbits(phi, search_cap, |w, p| {
            if w.len() <= canon_len {
                p.canonical(w, class_cap).ok()
            } else {
                None
            }
        })
    }

    /// [`Self::eventual_period`] with canonicalization served entirely by a
    /// prebuilt table — no per-step class searches.
    fn eventual_period_with_table(
        &self,
        phi: &Endo,
        search_cap: usize,
        table: &CanonTable,
    ) -> Result<Vec<LetterOrbit>, MonoidError> {
        self.letter_orbits(phi, search_cap, |w, _| table.canonical_of(w).cloned())
    }

    fn letter_orbits(
        &self,
        phi: &Endo,
        search_cap: usize,
        mut canon: impl FnMut(&[u8], &Presentation) -> Option<MWord>,
    ) -> Result<Vec<LetterOrbit>, MonoidError> {
        let max_steps = (4 * search_cap).max(64);
        let mut out = Vec::with_capacity(self.alphabet.len());
        for a in 0..self.alphabet.len() as u8 {
            let verdict = self.walk_orbit(phi, &[a], max_steps, search_cap, |w| canon(w, self));
            out.push(match verdict {
                OrbitWalk::EntersCycle { preperiod, period } => {
                    LetterOrbit::Periodic { preperiod, period }
                }
                OrbitWalk::LengthExceeded { step, length } => {
                    LetterOrbit::Unbounded { step, length }
                }
                OrbitWalk::Undetermined => LetterOrbit::Unresolved { steps: max_steps },
            });
        }
        Ok(out)
    }

    /// Exact least period of every canonical word of length ≤ `l` whose
    /// orbit returns to it; words with escaping orbits are reported, not
    /// guessed.
    pub fn orbit_periods_up_to(
        &self,
        phi: &Endo,
        l: usize,
        cap: usize,
    ) -> Result<OrbitPeriods, MonoidError> {
        let table = self.canonical_table_up_to(l, cap)?;
        self.orbit_periods_with_table(phi, &table, cap)
    }

    /// One pass over the functional graph `w ↦ canonical(wφ)` on the
    /// table's canonicals, extended by two absorbing states: one for
    /// orbits whose next element is the identity (they can never reach a
    /// nonempty word again) and one for orbits leaving the table. Words on
    /// cycles are periodic with the cycle length as exact least period.
    /// Orbits that leave the table provably never return when no generator
    /// image is empty; otherwise they are re-walked individually, and
    /// anything still unresolved is reported, not guessed.
    pub fn orbit_periods_with_table(
        &self,
        phi: &Endo,
        table: &CanonTable,
        cap: usize,
    ) -> Result<OrbitPeriods, MonoidError> {
        let l = table.len_bound();
        let canonicals = table.canonicals();
        let n = canonicals.len();
        let dead = n;
        let out = n + 1;
        let mut step = vec![dead; n + 2];
        step[out] = out;
        for (i, w) in canonicals.iter().enumerate() {
            let img = self.apply(phi, w);
            step[i] = if img.is_empty() {
                dead
            } else if img.len() <= l {
                table
                    .position_of(table.canonical_of(&img).expect("short words are tabled"))
                    .expect("canonicals are indexed")
            } else {
                out
            };
        }
        let data = orbit::orbit_data(&step);
        let monotone = phi.images.iter().all(|w| !w.is_empty());
        let mut needs_walk = vec![false; n];
        if !monotone {
            // Orbits that reach the out-state may shrink back into the
            // table; mark them for an individual walk.
            let mut hits = vec![None::<bool>; n + 2];
            hits[dead] = Some(false);
            hits[out] = Some(true);
            for start in 0..n {
                if hits[start].is_some() {
                    continue;
                }
                let mut path = Vec::new();
                let mut x = start;
                let verdict = loop {
                    if let Some(v) = hits[x] {
                        break v;
                    }
                    if data[x].0 == 0 {
                        // On a cycle of real words; it never leaves.
                        break false;
                    }
                    path.push(x);
                    x = step[x];
                };
                for v in path {
                    hits[v] = Some(verdict);
                }
                if hits[start].is_none() {
                    hits[start] = Some(verdict);
                }
            }
            for i in 0..n {
                needs_walk[i] = data[i].0 > 0 && hits[i] == Some(true);
            }
        }
        let mut periodic = Vec::new();
        let mut undetermined = Vec::new();
        for (i, w) in canonicals.iter().enumerate() {
            let (m, p) = data[i];
            if m == 0 {
                periodic.push((w.clone(), p as u64));
            } else if needs_walk[i] {
                match self.resolve_escaped_orbit(phi, w, table, cap) {
                    EscapeVerdict::Periodic(p) => periodic.push((w.clone(), p)),
                    EscapeVerdict::NotPeriodic => {}
                    EscapeVerdict::Undetermined => undetermined.push(w.clone()),
                }
            }
        }
        Ok(OrbitPeriods {
            periodic,
            undetermined,
        })
    }

    /// The times `t ≥ 1` at which `|wφᵗ| = |w|`, decided without building
    /// a single word: raw letter counts evolve linearly under
    /// substitution, and the resulting length profile is a class invariant
    /// (an endomorphism maps equal elements to equal elements, and
    /// balanced relations make length a class function), so it survives
    /// canonicalizing mid-orbit. The count orbit either repeats — giving
    /// the complete eventually-periodic profile — or the non-shrinking
    /// letter count outgrows `|w|`, after which no return is possible.
    fn length_return_times(&self, phi: &Endo, w: &[u8], step_cap: usize) -> ReturnTimes {
        let k = self.alphabet.len();
        let shrinks = self.shrinking_letters(phi);
        let l0 = w.len();
        let mut c = vec![0usize; k];
        for &x in w {
            c[x as usize] += 1;
        }
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(c.clone(), 0)]);
        let mut hits: Vec<usize> = Vec::new();
        for t in 1..=step_cap {
            let mut next = vec![0usize; k];
            for (&count, images) in c.iter().zip(&phi.images) {
                if count > 0 {
                    for &y in images {
                        next[y as usize] += count;
                    }
                }
            }
            c = next;
            let core: usize = (0..k).filter(|&a| !shrinks[a]).map(|a| c[a]).sum();
            if core > l0 {
                return ReturnTimes::Finite(hits);
            }
            if c.iter().sum::<usize>() == l0 {
                hits.push(t);
            }
            if let Some(&first) = seen.get(&c) {
                return if hits.iter().any(|&h| h >= first) {
                    ReturnTimes::Recurring
                } else {
                    ReturnTimes::Finite(hits)
                };
            }
            seen.insert(c.clone(), t);
        }
        ReturnTimes::Unknown
    }

    /// Exact periodicity of a table word whose orbit leaves the table: walk
    /// the raw orbit, consult the table whenever the word is short enough,
    /// and stop by the length profile. With finitely many return chances
    /// the walk just runs them out; with recurring ones the class orbit
    /// visits the finite table forever, so it either comes back to the
    /// start or repeats some other class first — and a deterministic orbit
    /// that repeats without the start never reaches it.
    fn resolve_escaped_orbit(
        &self,
        phi: &Endo,
        w: &MWord,
        table: &CanonTable,
        cap: usize,
    ) -> EscapeVerdict {
        let step_cap = cap.max(1024);
        let raw_cap = 1usize << 20;
        match self.length_return_times(phi, w, step_cap) {
            ReturnTimes::Unknown => EscapeVerdict::Undetermined,
            ReturnTimes::Finite(times) => {
                let Some(&last) = times.last() else {
                    return EscapeVerdict::NotPeriodic;
                };
                let mut cur = w.clone();
                for t in 1..=last {
                    cur = self.apply(phi, &cur);
                    if cur.len() > raw_cap {
                        return EscapeVerdict::Undetermined;
                    }
                    if let Some(c) = table.canonical_of(&cur) {
                        if c == w {
                            return EscapeVerdict::Periodic(t as u64);
                        }
                        cur = c.clone();
                    }
                }
                EscapeVerdict::NotPeriodic
            }
            ReturnTimes::Recurring => {
                let start = table.position_of(w).expect("escaped words are tabled");
                let mut visited = vec![false; table.canonicals().len()];
                visited[start] = true;
                let mut cur = w.clone();
                for t in 1..=step_cap {
                    cur = self.apply(phi, &cur);
                    if cur.len() > raw_cap {
                        return EscapeVerdict::Undetermined;
                    }
                    if let Some(c) = table.canonical_of(&cur) {
                        if c == w {
                            return EscapeVerdict::Periodic(t as u64);
                        }
                        let idx = table.position_of(c).expect("canonicals are indexed");
                        if visited[idx] {
                            return EscapeVerdict::NotPeriodic;
                        }
                        visited[idx] = true;
                        cur = c.clone();
                    }
                }
                EscapeVerdict::Undetermined
            }
        }
    }

    /// Words fixed by the n-th iterate, from exact orbit periods: `w` is
    /// fixed by `φⁿ` iff its orbit returns to it with period dividing `n`.
    pub fn fix_of_power_up_to(
        &self,
        phi: &Endo,
        n: u64,
        l: usize,
        cap: usize,
    ) -> Result<Vec<MWord>, MonoidError> {
        let periods = self.orbit_periods_up_to(phi, l, cap)?;
        if let Some(word) = periods.undetermined.first() {
            return Err(MonoidError::OrbitUndetermined {
                word: self.print_mword(word),
            });
        }
        Ok(periods
            .periodic
            .into_iter()
            .filter(|&(_, p)| n.is_multiple_of(p))
            .map(|(w, _)| w)
            .collect())
    }

    /// Words fixed by the n-th iterate, by direct n-fold application —
    /// the cross-checking route, independent of orbit analysis. Lengths
    /// during iteration are bounded by `raw_cap`.
    pub fn fix_of_power_direct(
        &self,
        phi: &Endo,
        n: u64,
        l: usize,
        cap: usize,
        raw_cap: usize,
    ) -> Result<Vec<MWord>, MonoidError> {
        let mut out = Vec::new();
        let mut error = None;
        self.for_each_canonical(l, cap, &mut |w| {
            if error.is_some() {
                return;
            }
            let mut cur = w.to_vec();
            for _ in 0..n {
                cur = self.apply(phi, &cur);
                if cur.len() > raw_cap {
                    // Final length is a function of letter counts only, so
                    // once even the true length diverges from |w| the word
                    // cannot be fixed; a blow-up past raw_cap with n small
                    // means the remaining steps cannot shrink back to |w|
                    // at sweep scales — treated as an error to stay honest.
                    error = Some(MonoidError::ClassCapExceeded { cap: raw_cap });
                    return;
                }
            }
            if cur.len() == w.len() {
                match self.equal(&cur, w, cap) {
                    Ok(true) => out.push(w.to_vec()),
                    Ok(false) => {}
                    Err(e) => error = Some(e),
                }
            }
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Fixed sets of `φ, φ², …, φ^n_max` in one sweep, by raw repeated
    /// application and a final table comparison — independent of any orbit
    /// analysis. The result at index `i` is `Fix(φ^{i+1})` restricted to
    /// the table, in table (shortlex) order.
    ///
    /// The length of `wφⁱ` depends only on the letter counts of `w`, so
    /// words where no iterate up to `n_max` can match the length are
    /// skipped without applying anything.
    pub fn power_fixes_direct_with_table(
        &self,
        phi: &Endo,
        n_max: usize,
        table: &CanonTable,
    ) -> Vec<Vec<MWord>> {
        let k = self.alphabet.len();
        let mut il: Vec<Vec<usize>> = vec![phi.image_lengths()];
        for i in 1..n_max {
            let prev = &il[i - 1];
            let next = (0..k)
                .map(|a| phi.images[a].iter().map(|&x| prev[x as usize]).sum())
                .collect();
            il.push(next);
        }
        let mut out: Vec<Vec<MWord>> = vec![Vec::new(); n_max];
        for w in table.canonicals() {
            let mut counts = vec![0usize; k];
            for &x in w {
                counts[x as usize] += 1;
            }
            let mask: Vec<bool> = (0..n_max)
                .map(|i| (0..k).map(|a| counts[a] * il[i][a]).sum::<usize>() == w.len())
                .collect();
            let Some(last) = mask.iter().rposition(|&b| b) else {
                continue;
            };
            let mut cur = w.clone();
            for (i, &live) in mask.iter().enumerate().take(last + 1) {
                cur = self.apply(phi, &cur);
                if live && table.canonical_of(&cur) == Some(w) {
                    out[i].push(w.clone());
                }
            }
        }
        out
    }

    /// Periodic points up to length `l`: exact least periods, the least
    /// `k` with all periods dividing `k!`, indecomposables of the periodic
    /// submonoid, and the period bound `R` = lcm of their periods.
    pub fn per_up_to(
        &self,
        phi: &Endo,
        l: usize,
        n_max: usize,
        cap: usize,
    ) -> Result<PerReport, MonoidError> {
        let table = self.canonical_table_up_to(l, cap)?;
        self.per_with_table(phi, &table, n_max, cap)
    }

    /// [`Self::per_up_to`] over a prebuilt canonical table.
    pub fn per_with_table(
        &self,
        phi: &Endo,
        table: &CanonTable,
        n_max: usize,
        cap: usize,
    ) -> Result<PerReport, MonoidError> {
        let l = table.len_bound();
        let periods = self.orbit_periods_with_table(phi, table, cap)?;
        let generator_orbits =
            self.eventual_period_with_table(phi, (8 * l + 64).max(256), table)?;
        let per: Vec<MWord> = periods.periodic.iter().map(|(w, _)| w.clone()).collect();
        let per_periods: Vec<u64> = periods.periodic.iter().map(|&(_, p)| p).collect();
        let stationary_at = if periods.undetermined.is_empty() {
            let data: Vec<(usize, usize)> = per_periods.iter().map(|&p| (0, p as usize)).collect();
            Some(orbit::power_stabilization(&data))
        } else {
            None
        };
        let stabilized_in_window = matches!(stationary_at, Some(k) if k <= n_max);
        // Periodic elements form a submonoid, so a periodic class is
        // decomposable iff it is the product of two shorter periodic
        // classes — checked over canonical pairs through the table, which
        // is equivalent to splitting every member of the class and far
        // cheaper when most of the table is periodic.
        let mut by_len: Vec<Vec<&MWord>> = vec![Vec::new(); l + 1];
        for w in &per {
            by_len[w.len()].push(w);
        }
        let mut decomposable: HashSet<&MWord> = HashSet::new();
        let mut prod = Vec::with_capacity(l);
        for x in per.iter().filter(|x| !x.is_empty()) {
            for bucket in &by_len[1..=l - x.len()] {
                for y in bucket {
                    prod.clear();
                    prod.extend_from_slice(x);
                    prod.extend_from_slice(y);
                    let c = table
                        .canonical_of(&prod)
                        .expect("products within the length bound are tabled");
                    decomposable.insert(c);
                }
            }
        }
        let mut indecomposables = Vec::new();
        let mut period_bound = 1u64;
        for (w, p) in &periods.periodic {
            if !decomposable.contains(w) {
                indecomposables.push(w.clone());
                period_bound = lcm(period_bound, *p);
            }
        }
        Ok(PerReport {
            length_bound: l,
            window: n_max,
            stationary_at,
            stabilized_in_window,
            per,
            periods: per_periods,
            generator_orbits,
            indecomposables,
            period_bound,
            undetermined: periods.undetermined,
        })
    }

    /// Verifies `xφ^R ≡ x` for every reported periodic element by direct
    /// iteration (independent of the orbit analysis that produced the
    /// report). Returns the verdict and a witness on failure.
    pub fn period_check(
        &self,
        phi: &Endo,
        report: &PerReport,
        cap: usize,
    ) -> Result<(bool, Option<MWord>), MonoidError> {
        let r = report.period_bound;
        for x in &report.per {
            let mut cur = x.clone();
            let mut ok = false;
            if r <= 4096 {
                for _ in 0..r {
                    cur = self.apply(phi, &cur);
                    if cur.len() > 64 * (x.len() + 1) {
                        break;
                    }
                }
                ok = cur.len() == x.len() && self.equal(&cur, x, cap)?;
            } else if let Some(i) = report.per.iter().position(|w| w == x) {
                // Fall back to arithmetic only when direct iteration is
                // out of reach.
                ok = r.is_multiple_of(report.periods[i]);
            }
            if !ok {
                return Ok((false, Some(x.clone())));
            }
        }
        Ok((true, None))
    }
}

enum OrbitWalk {
    EntersCycle { preperiod: usize, period: usize },
    LengthExceeded { step: usize, length: usize },
    Undetermined,
}

/// Length profile of an orbit, from the count dynamics alone.
enum ReturnTimes {
    /// Every time the orbit revisits the start length, complete.
    Finite(Vec<usize>),
    /// Start-length visits recur forever.
    Recurring,
    /// Count orbit neither repeated nor provably diverged in budget.
    Unknown,
}

enum EscapeVerdict {
    Periodic(u64),
    NotPeriodic,
    Undetermined,
}

/// Report for the three-generator example with relation `cac = cbc` and
/// the endomorphism swapping `a` and `b`: the words `(ca)ⁿc` are fixed,
/// pairwise distinct, and indecomposable, so the fixed submonoid is not
/// finitely generated.
#[derive(Clone, Debug)]
pub struct ExthReport {
    pub n_max: usize,
    pub words: Vec<MWord>,
    pub all_fixed: bool,
    pub all_distinct: bool,
    pub all_indecomposable: bool,
    /// (length bound 2n+1, indecomposables of the fixed submonoid up to
    /// that length), for n = 1..=n_max.
    pub counts: Vec<(usize, usize)>,
    pub counts_strictly_increase: bool,
    pub fix_rank_at_bound: usize,
}

pub fn exth_presentation() -> Presentation {
    Presentation::parse("monoid a b c ; cac = cbc").expect("fixed presentation parses")
}

pub fn exth_endo(p: &Presentation) -> Result<Endo, MonoidError> {
    p.validate_endo(p.parse_endo("a -> b ; b -> a ; c -> c")?)
}

pub fn exth_check(n_max: usize) -> Result<ExthReport, MonoidError> {
    assert!(n_max >= 1);
    let p = exth_presentation();
    let phi = exth_endo(&p)?;
    let l = 2 * n_max + 1;
    let report = p.fix_up_to(&phi, l, caps::search_cap())?;
    let fixed: HashSet<&MWord> = report.fixed.iter().collect();
    let indec: HashSet<&MWord> = report.indecomposables.iter().collect();
    let mut words = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut w = Vec::with_capacity(2 * n + 1);
        for _ in 0..n {
            w.extend_from_slice(&[2, 0]); // "ca"
        }
        w.push(2); // trailing "c"
        words.push(p.canonical(&w, caps::search_cap())?);
    }
    let all_fixed = words.iter().all(|w| fixed.contains(w));
    let distinct: HashSet<&MWord> = words.iter().collect();
    let all_distinct = distinct.len() == words.len();
    let all_indecomposable = words.iter().all(|w| indec.contains(w));
    let counts: Vec<(usize, usize)> = (1..=n_max)
        .map(|n| {
            let bound = 2 * n + 1;
            (
                bound,
                report
                    .indecomposables
                    .iter()
                    .filter(|w| w.len() <= bound)
                    .count(),
            )
        })
        .collect();
    let counts_strictly_increase = counts.windows(2).all(|w| w[0].1 < w[1].1);
    Ok(ExthReport {
        n_max,
        words,
        all_fixed,
        all_distinct,
        all_indecomposable,
        counts,
        counts_strictly_increase,
        fix_rank_at_bound: report.rank_at_l,
    })
}
