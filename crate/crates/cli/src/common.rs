//! Argument parsing shared across command families.

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;

use takahasi_core::orbit::{resolve_endo, EndoJson};
use takahasi_core::rees::ReesElement;
use takahasi_core::words::{Alphabet, Word};

/// Free-group words are parsed over `a..z`; `'` marks the inverse.
pub fn word_alphabet() -> Alphabet {
    Alphabet::latin(26)
}

pub fn parse_words(alphabet: &Alphabet, texts: &[String]) -> Result<Vec<Word>> {
    texts
        .iter()
        .map(|t| {
            alphabet
                .parse_word(t)
                .with_context(|| format!("bad word `{t}`"))
        })
        .collect()
}

/// One chain term per argument, generators separated by commas.
pub fn parse_chain_terms(alphabet: &Alphabet, terms: &[String]) -> Result<Vec<Vec<Word>>> {
    terms
        .iter()
        .map(|term| parse_words(alphabet, &split_commas(term)))
        .collect()
}

pub fn split_commas(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// `i,g,λ` with all three parts element indices.
pub fn parse_rees_element(text: &str) -> Result<ReesElement> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [i, g, l] = parts.as_slice() else {
        bail!("element `{text}` must be `i,g,lambda`");
    };
    Ok((parse_index(i)?, parse_index(g)?, parse_index(l)?))
}

/// `level,g`.
pub fn parse_clifford_element(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, g] = parts.as_slice() else {
        bail!("element `{text}` must be `level,g`");
    };
    Ok((parse_index(a)?, parse_index(g)?))
}

fn parse_index(text: &str) -> Result<usize> {
    text.parse()
        .with_context(|| format!("`{text}` is not an index"))
}

/// Sandwich matrix text: one row per column index λ (separated by `;`),
/// each listing group entries for the row indices i in order.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<usize>>> {
    let rows: Result<Vec<Vec<usize>>> = text
        .split(';')
        .map(|row| row.split_whitespace().map(parse_index).collect())
        .collect();
    let rows = rows?;
    if rows.is_empty() || rows.iter().any(Vec::is_empty) {
        bail!("matrix `{text}` has an empty row");
    }
    Ok(rows)
}

/// An endomorphism of a finite semigroup, by element indices.
#[derive(Args)]
pub struct EndoArg {
    /// Full map: one image index per element, space-separated.
    #[arg(long, conflicts_with = "images")]
    pub map: Option<String>,
    /// Generator images `g->h` separated by `;`, extended along products.
    #[arg(long)]
    pub images: Option<String>,
}

impl EndoArg {
    pub fn resolve(
        &self,
        n: usize,
        mul: impl Fn(usize, usize) -> usize + Copy,
    ) -> Result<Vec<usize>> {
        let json = match (&self.map, &self.images) {
            (Some(map), None) => EndoJson::Map {
                map: map
                    .split_whitespace()
                    .map(parse_index)
                    .collect::<Result<_>>()?,
            },
            (None, Some(images)) => {
                let mut pairs = Vec::new();
                for seg in images.split(';') {
                    if seg.trim().is_empty() {
                        continue;
                    }
                    let (g, img) = seg
                        .split_once("->")
                        .ok_or_else(|| anyhow!("image `{}` needs one `->`", seg.trim()))?;
                    pairs.push((parse_index(g.trim())?, parse_index(img.trim())?));
                }
                EndoJson::Images {
                    generator_images: pairs,
                }
            }
            _ => bail!("provide exactly one of --map or --images"),
        };
        Ok(resolve_endo(n, mul, &json)?)
    }
}

/// Mirrors the presentation printer: contiguous if every name is one
/// character, `1` for the empty word.
pub fn print_letters(alphabet: &Alphabet, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let single = alphabet.symbols().all(|s| s.chars().count() == 1);
    let parts: Vec<&str> = w
        .iter()
        .map(|&a| alphabet.name(a as u32).unwrap_or("?"))
        .collect();
    parts.join(if single { "" } else { " " })
}
