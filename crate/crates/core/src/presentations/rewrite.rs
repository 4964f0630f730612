//! Oriented length-preserving rewriting systems. Rules must strictly
//! decrease in the fixed-length lexicographic order, so rewriting always
//! terminates; local confluence is checked by joining every critical pair
//! arising from rule overlaps and containments.

use std::collections::BTreeSet;

use thiserror::Error;

use super::MWord;
use crate::words::Alphabet;

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rule #{0} has sides of different lengths")]
    NotLengthPreserving(usize),
    #[error("rule #{0} does not decrease in the lexicographic order")]
    NotDecreasing(usize),
    #[error("rule #{0} has an empty left side")]
    EmptyLeftSide(usize),
    #[error("letter #{0} is outside the alphabet of {1} symbols")]
    LetterOutOfRange(usize, usize),
}

/// A terminating string rewriting system: every rule `l → r` satisfies
/// `|l| = |r|` and `r < l` letterwise-lexicographically, so each rewrite
/// strictly decreases a word in a well-founded order.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<(MWord, MWord)>,
}

/// One overlap or containment of two rule left sides: the shared word and
/// its two one-step reducts, with their normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub source: MWord,
    pub left: MWord,
    pub right: MWord,
    pub left_nf: MWord,
    pub right_nf: MWord,
    pub joinable: bool,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub pairs: Vec<CriticalPair>,
    pub locally_confluent: bool,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<(MWord, MWord)>) -> Result<Self, RewriteError> {
        for (i, (l, r)) in rules.iter().enumerate() {
            for &a in l.iter().chain(r.iter()) {
                if a as usize >= alphabet.len() {
                    return Err(RewriteError::LetterOutOfRange(a as usize, alphabet.len()));
                }
            }
            if l.is_empty() {
                return Err(RewriteError::EmptyLeftSide(i));
            }
            if l.len() != r.len() {
                return Err(RewriteError::NotLengthPreserving(i));
            }
            if r >= l {
                return Err(RewriteError::NotDecreasing(i));
            }
        }
        Ok(RewriteSystem { alphabet, rules })
    }

    /// Text form: `a b ; bb -> aa ; baa -> aab` — generator names, then
    /// `->`-rules, separated by `;`. Words follow the same syntax as
    /// presentations (whitespace-separated or contiguous single-char
    /// names).
    pub fn parse(text: &str) -> Result<Self, RewriteError> {
        let mut segments = text.split(';');
        let head = segments.next().unwrap_or("");
        let names: Vec<&str> = head.split_whitespace().collect();
        if names.is_empty() {
            return Err(RewriteError::Parse("no generators listed".into()));
        }
        let alphabet = Alphabet::new(names.iter().map(|s| s.to_string()))
            .map_err(|e| RewriteError::Parse(e.to_string()))?;
        let parse_word = |text: &str| -> Result<MWord, RewriteError> {
            let mut out = Vec::new();
            for tok in text.split_whitespace() {
                if let Some(base) = alphabet.base(tok) {
                    out.push(base as u8);
                } else {
                    for ch in tok.chars() {
                        let base = alphabet.base(&ch.to_string()).ok_or_else(|| {
                            RewriteError::Parse(format!("unknown letter `{ch}` in `{tok}`"))
                        })?;
                        out.push(base as u8);
                    }
                }
            }
            Ok(out)
        };
        let mut rules = Vec::new();
        for seg in segments {
            if seg.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = seg.split("->").collect();
            if parts.len() != 2 {
                return Err(RewriteError::Parse(format!(
                    "rule `{}` needs exactly one `->`",
                    seg.trim()
                )));
            }
            rules.push((parse_word(parts[0])?, parse_word(parts[1])?));
        }
        RewriteSystem::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[(MWord, MWord)] {
        &self.rules
    }

    /// The well-founded order that proves termination.
    pub fn order_descriptor(&self) -> String {
        format!(
            "fixed-length lexicographic, {}",
            self.alphabet.symbols().collect::<Vec<_>>().join(" < ")
        )
    }

    /// First redex scanning left to right, trying rules in declaration
    /// order at each position.
    fn leftmost_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for (rule, (l, _)) in self.rules.iter().enumerate() {
                if i + l.len() <= w.len() && &w[i..i + l.len()] == l.as_slice() {
                    return Some((i, rule));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.leftmost_redex(w).is_none()
    }

    /// Applies the leftmost applicable rule until no redex remains. Each
    /// application keeps the length and strictly decreases the word
    /// lexicographically, so this terminates.
    pub fn normal_form(&self, w: &[u8]) -> MWord {
        let mut cur = w.to_vec();
        while let Some((i, rule)) = self.leftmost_redex(&cur) {
            let (l, r) = &self.rules[rule];
            cur[i..i + l.len()].copy_from_slice(r);
        }
        cur
    }

    /// All critical pairs: proper overlaps (a suffix of one left side is a
    /// prefix of another) and containments (one left side inside another),
    /// deduplicated by source word and reduct set.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut seen: BTreeSet<(MWord, BTreeSet<MWord>)> = BTreeSet::new();
        let mut out = Vec::new();
        let mut push = |source: MWord, left: MWord, right: MWord, sys: &Self| {
            if left == right {
                return;
            }
            let key = (
                source.clone(),
                BTreeSet::from([left.clone(), right.clone()]),
            );
            if !seen.insert(key) {
                return;
            }
            let left_nf = sys.normal_form(&left);
            let right_nf = sys.normal_form(&right);
            out.push(CriticalPair {
                source,
                joinable: left_nf == right_nf,
                left,
                right,
                left_nf,
                right_nf,
            });
        };
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                // Proper overlap: l1 = x·s, l2 = s·y with s nonempty and
                // both x, y nonempty; the source x·s·y reduces two ways.
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut source = l1.clone();
                        source.extend_from_slice(&l2[k..]);
                        let mut left = r1.clone();
                        left.extend_from_slice(&l2[k..]);
                        let mut right = l1[..l1.len() - k].to_vec();
                        right.extend_from_slice(r2);
                        push(source, left, right, self);
                    }
                }
                // Containment: l2 occurs inside l1 (not as the identical
                // occurrence of the same rule).
                if l2.len() <= l1.len() {
                    for i in 0..=l1.len() - l2.len() {
                        if std::ptr::eq(l1, l2) && i == 0 && l1.len() == l2.len() {
                            continue;
                        }
                        if &l1[i..i + l2.len()] == l2.as_slice() {
                            let mut right = l1[..i].to_vec();
                            right.extend_from_slice(r2);
                            right.extend_from_slice(&l1[i + l2.len()..]);
                            push(l1.clone(), r1.clone(), right, self);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn check_local_confluence(&self) -> ConfluenceReport {
        let pairs = self.critical_pairs();
        let locally_confluent = pairs.iter().all(|p| p.joinable);
        ConfluenceReport {
            pairs,
            locally_confluent,
        }
    }
}

/// The two-rule system rewriting squares of the second letter: over
/// `{a, b}`, the rules `bb → aa` and `baa → aab`.
pub fn square_swap_system() -> RewriteSystem {
    RewriteSystem::parse("a b ; bb -> aa ; baa -> aab").expect("fixed system is valid")
}

/// Membership in `a*(ba)*{1, b}`: the normal-form language of
/// [`square_swap_system`] — words avoiding both `bb` and `baa`.
pub fn in_normal_form_language(w: &[u8]) -> bool {
    let mut i = 0;
    while i < w.len() && w[i] == 0 {
        i += 1;
    }
    while i + 1 < w.len() && w[i] == 1 && w[i + 1] == 0 {
        i += 2;
    }
    i == w.len() || (i + 1 == w.len() && w[i] == 1)
}
