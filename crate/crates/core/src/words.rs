//! Alphabets, involutive letters, and words.
//!
//! An [`Alphabet`] is an ordered finite set of symbol names; letters are
//! interned as small integers and carry a formal-inverse flag, so a
//! [`Word`] is a word over `A ∪ A⁻¹`. Plain (semigroup/monoid) words are
//! the special case where no letter is inverted.
//!
//! Text form: symbols separated by whitespace, a trailing `'` marking the
//! formal inverse — `a b' c` is `a · b⁻¹ · c`. Parsing and printing
//! round-trip exactly.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet symbol may not be empty")]
    EmptySymbol,
    #[error("alphabet symbol `{0}` contains whitespace or `'`")]
    BadSymbol(String),
    #[error("duplicate alphabet symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("letter #{0} is outside this alphabet of {1} symbols")]
    LetterOutOfRange(u32, usize),
}

/// An ordered finite set of distinct symbols. The order of construction is
/// the alphabet order used by shortlex comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for s in symbols {
            let s: String = s.into();
            if s.is_empty() {
                return Err(WordError::EmptySymbol);
            }
            if s.contains(char::is_whitespace) || s.contains('\'') {
                return Err(WordError::BadSymbol(s));
            }
            if index.contains_key(&s) {
                return Err(WordError::DuplicateSymbol(s));
            }
            index.insert(s.clone(), names.len() as u32);
            names.push(s);
        }
        Ok(Alphabet { names, index })
    }

    /// `a`, `b`, `c`, … — the first `n ≤ 26` lowercase letters.
    pub fn latin(n: usize) -> Alphabet {
        assert!(n <= 26);
        Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, base: u32) -> Option<&str> {
        self.names.get(base as usize).map(|s| s.as_str())
    }

    pub fn base(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|l| (l.base as usize) < self.len())
    }

    fn check_word(&self, w: &Word) -> Result<(), WordError> {
        for l in w.letters() {
            if l.base as usize >= self.len() {
                return Err(WordError::LetterOutOfRange(l.base, self.len()));
            }
        }
        Ok(())
    }

    /// Parses the whitespace-separated text form; `'` marks the inverse.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverted) = match tok.strip_suffix('\'') {
                Some(stem) => (stem, true),
                None => (tok, false),
            };
            let base = self
                .base(name)
                .ok_or_else(|| WordError::UnknownSymbol(tok.to_string()))?;
            letters.push(Letter { base, inverted });
        }
        Ok(Word::from_letters(letters))
    }

    pub fn print_word(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|l| {
                let name = self.name(l.base).unwrap_or("?");
                if l.inverted {
                    format!("{name}'")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn print_letter(&self, l: Letter) -> String {
        let name = self.name(l.base).unwrap_or("?");
        if l.inverted {
            format!("{name}'")
        } else {
            name.to_string()
        }
    }

    pub fn parse_letter(&self, tok: &str) -> Result<Letter, WordError> {
        let w = self.parse_word(tok)?;
        match w.letters() {
            [l] => Ok(*l),
            _ => Err(WordError::UnknownSymbol(tok.to_string())),
        }
    }

    /// Shortlex comparison after checking both words live over this
    /// alphabet.
    pub fn shortlex(&self, a: &Word, b: &Word) -> Result<Ordering, WordError> {
        self.check_word(a)?;
        self.check_word(b)?;
        Ok(shortlex_cmp(a, b))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }
}

/// A letter over `A ∪ A⁻¹`: an interned base symbol plus an inversion flag.
///
/// The derived order is `(base, inverted)`, i.e. `a < a⁻¹ < b < b⁻¹`; this
/// is the letter order under all shortlex comparisons in this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub base: u32,
    pub inverted: bool,
}

impl Letter {
    pub fn plain(base: u32) -> Letter {
        Letter {
            base,
            inverted: false,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            base: self.base,
            inverted: !self.inverted,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{}", self.base, if self.inverted { "'" } else { "" })
    }
}

/// A word over `A ∪ A⁻¹`. The empty word is representable; modules with
/// semigroup semantics reject it at their own boundaries. The derived
/// order is lexicographic; use [`shortlex_cmp`] where length comes first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    /// A plain (uninverted) word from base indices.
    pub fn plain(bases: impl IntoIterator<Item = u32>) -> Word {
        Word {
            letters: bases.into_iter().map(Letter::plain).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Formal inverse: reverse the letters and invert each. No reduction.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancels adjacent `x · x⁻¹` pairs until none remain. Single stack
    /// pass; the result is the unique reduced form.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn has_inverted_letter(&self) -> bool {
        self.letters.iter().any(|l| l.inverted)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        write!(f, "]")
    }
}

/// Length first, then lexicographic in the `(base, inverted)` letter order.
/// Callers that need the alphabet-mismatch check use [`Alphabet::shortlex`].
pub fn shortlex_cmp(a: &Word, b: &Word) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.letters.cmp(&b.letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn ab() -> Alphabet {
        Alphabet::latin(2)
    }

    #[test]
    fn alphabet_rejects_bad_symbols() {
        assert_eq!(
            Alphabet::new(["a", "a"]).unwrap_err(),
            WordError::DuplicateSymbol("a".into())
        );
        assert_eq!(Alphabet::new([""]).unwrap_err(), WordError::EmptySymbol);
        assert!(matches!(
            Alphabet::new(["x'"]).unwrap_err(),
            WordError::BadSymbol(_)
        ));
        assert!(matches!(
            Alphabet::new(["a b"]).unwrap_err(),
            WordError::BadSymbol(_)
        ));
    }

    #[test]
    fn parse_print_round_trip() {
        let ab = ab();
        for text in ["", "a", "a b' a", "b b b'", "a' a' b"] {
            let w = ab.parse_word(text).unwrap();
            let printed = ab.print_word(&w);
            assert_eq!(ab.parse_word(&printed).unwrap(), w);
            // Print of parse is the canonical spacing of the input.
            assert_eq!(
                printed,
                text.split_whitespace().collect::<Vec<_>>().join(" ")
            );
        }
        assert_eq!(
            ab.parse_word("a c").unwrap_err(),
            WordError::UnknownSymbol("c".into())
        );
    }

    #[test]
    fn free_reduce_examples() {
        let ab = ab();
        let r = |s: &str| ab.print_word(&ab.parse_word(s).unwrap().free_reduce());
        assert_eq!(r("a a'"), "");
        assert_eq!(r("a b b' a"), "a a");
        assert_eq!(r("a b a'"), "a b a'");
        assert_eq!(r("a a' a"), "a");
        assert_eq!(r(""), "");
    }

    #[test]
    fn inverse_examples() {
        let ab = ab();
        let inv = |s: &str| ab.print_word(&ab.parse_word(s).unwrap().inverse());
        assert_eq!(inv("a b"), "b' a'");
        assert_eq!(inv(""), "");
        // Inversion does not reduce.
        assert_eq!(inv("a a' b"), "b' a a'");
    }

    #[test]
    fn shortlex_examples() {
        let ab = ab();
        let cmp = |x: &str, y: &str| {
            ab.shortlex(&ab.parse_word(x).unwrap(), &ab.parse_word(y).unwrap())
                .unwrap()
        };
        assert_eq!(cmp("a", "b"), Ordering::Less);
        assert_eq!(cmp("b", "a a"), Ordering::Less);
        assert_eq!(cmp("a b", "a b"), Ordering::Equal);
        assert_eq!(cmp("a'", "a"), Ordering::Greater);
        assert_eq!(cmp("a'", "b"), Ordering::Less);
    }

    #[test]
    fn shortlex_checks_alphabet() {
        let ab = ab();
        let stray = Word::plain([5]);
        assert_eq!(
            ab.shortlex(&stray, &Word::empty()).unwrap_err(),
            WordError::LetterOutOfRange(5, 2)
        );
    }

    /// Oracle: cancel pairs in an arbitrary (seeded) order instead of by a
    /// stack pass. Reduction is confluent, so the results must agree.
    fn reduce_by_random_deletions(w: &Word, seed: u64) -> Word {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut letters = w.letters().to_vec();
        loop {
            let sites: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&i| letters[i] == letters[i + 1].inverse())
                .collect();
            match sites.choose(&mut rng) {
                Some(&i) => {
                    letters.drain(i..i + 2);
                }
                None => return Word::from_letters(letters),
            }
        }
    }

    #[test]
    fn reduction_agrees_with_any_order_oracle() {
        // All involutive words of length ≤ 7 over two letters.
        let letters: Vec<Letter> = (0..2u32)
            .flat_map(|b| [Letter::plain(b), Letter::plain(b).inverse()])
            .collect();
        let mut stack = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            let w = Word::from_letters(cur.clone());
            for seed in [1u64, 2, 3] {
                assert_eq!(w.free_reduce(), reduce_by_random_deletions(&w, seed));
            }
            if cur.len() < 7 {
                for &l in &letters {
                    let mut next = cur.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec((0..3u32, any::<bool>()), 0..12).prop_map(|ls| {
            Word::from_letters(
                ls.into_iter()
                    .map(|(base, inverted)| Letter { base, inverted })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in word_strategy()) {
            let r = w.free_reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn inverse_is_involution(w in word_strategy()) {
            prop_assert_eq!(w.inverse().inverse(), w);
        }

        #[test]
        fn reduce_of_w_winv_is_empty(w in word_strategy()) {
            prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
        }

        #[test]
        fn shortlex_is_total_and_transitive(
            a in word_strategy(), b in word_strategy(), c in word_strategy()
        ) {
            // Antisymmetry.
            prop_assert_eq!(shortlex_cmp(&a, &b), shortlex_cmp(&b, &a).reverse());
            // Equality agrees with structural equality.
            prop_assert_eq!(shortlex_cmp(&a, &b) == Ordering::Equal, a == b);
            // Transitivity of ≤.
            if shortlex_cmp(&a, &b) != Ordering::Greater
                && shortlex_cmp(&b, &c) != Ordering::Greater
            {
                prop_assert_ne!(shortlex_cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
