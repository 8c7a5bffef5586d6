use std::collections::{BTreeMap, BTreeSet};

use crate::corpus_io::Corpus;
use crate::error::{Error, Result};

/// Whitespace tokenizer; lowercases unless `case_sensitive`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tokenizer {
    pub case_sensitive: bool,
}

impl Tokenizer {
    pub fn tokenize(&self, text: &str) -> Vec<String> {
        text.split_whitespace()
            .map(|t| {
                if self.case_sensitive {
                    t.to_string()
                } else {
                    t.to_lowercase()
                }
            })
            .collect()
    }
}

/// Per-sample multisets of m-token windows.
///
/// A gram is stored as its tokens joined by a single space; tokens never
/// contain whitespace, so the encoding is unambiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct GramBag {
    m: usize,
    grams: Vec<BTreeMap<String, usize>>,
    totals: Vec<usize>,
}

impl GramBag {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.grams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grams.is_empty()
    }

    /// Multiset of grams for sample `i` (gram → count).
    pub fn sample(&self, i: usize) -> &BTreeMap<String, usize> {
        &self.grams[i]
    }

    pub fn totals(&self) -> &[usize] {
        &self.totals
    }

    pub fn total(&self) -> usize {
        self.totals.iter().sum()
    }

    pub fn distinct(&self) -> BTreeSet<&str> {
        self.grams
            .iter()
            .flat_map(|g| g.keys().map(String::as_str))
            .collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct().len()
    }
}

pub fn grams_of(tokens: &[String], m: usize) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    if m == 0 {
        return out;
    }
    for window in tokens.windows(m) {
        *out.entry(window.join(" ")).or_insert(0) += 1;
    }
    out
}

pub fn extract_grams(corpus: &Corpus, m: usize, tokenizer: Tokenizer) -> Result<GramBag> {
    extract_grams_from_texts(corpus.texts(), m, tokenizer)
}

pub fn extract_grams_from_texts<'a, I>(texts: I, m: usize, tokenizer: Tokenizer) -> Result<GramBag>
where
    I: IntoIterator<Item = &'a str>,
{
    if m < 1 {
        return Err(Error::out_of_range("m", "gram length must be at least 1"));
    }
    let mut grams = Vec::new();
    let mut totals = Vec::new();
    for text in texts {
        let tokens = tokenizer.tokenize(text);
        let bag = grams_of(&tokens, m);
        totals.push(bag.values().sum());
        grams.push(bag);
    }
    Ok(GramBag { m, grams, totals })
}
