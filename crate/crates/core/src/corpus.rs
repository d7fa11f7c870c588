//! Tokenized corpora and monolingual vocabularies.
//!
//! Corpus files are UTF-8, one sentence per line, tokens separated by
//! whitespace. Empty lines are kept as empty sentences so that a source
//! file and its target file stay line-parallel through preprocessing.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Sentence = Vec<String>;

/// Number of Unicode code points in `s`.
///
/// All length comparisons in this crate go through this helper; byte
/// lengths are meaningless for transliterated or native Indic text.
#[inline]
pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

pub(crate) fn is_valid_token(token: &str) -> bool {
    !token.is_empty() && !token.chars().any(char::is_whitespace)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenCorpus {
    sentences: Vec<Sentence>,
}

impl TokenCorpus {
    /// Builds a corpus, rejecting empty tokens and tokens containing whitespace.
    pub fn new(sentences: Vec<Sentence>) -> Result<Self> {
        for token in sentences.iter().flatten() {
            if !is_valid_token(token) {
                return Err(Error::InvalidToken(token.clone()));
            }
        }
        Ok(TokenCorpus { sentences })
    }

    /// Caller guarantees every token is valid.
    pub(crate) fn from_valid(sentences: Vec<Sentence>) -> Self {
        debug_assert!(sentences.iter().flatten().all(|t| is_valid_token(t)));
        TokenCorpus { sentences }
    }

    /// Parses text with one sentence per line, splitting tokens on whitespace runs.
    pub fn parse(text: &str) -> Self {
        let sentences = text
            .lines()
            .map(|line| line.split_whitespace().map(str::to_owned).collect())
            .collect();
        TokenCorpus { sentences }
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn into_sentences(self) -> Vec<Sentence> {
        self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sentence> {
        self.sentences.iter()
    }

    /// Renders the corpus in the on-disk format: tokens joined by a single
    /// space, every sentence terminated by a newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for sentence in &self.sentences {
            for (i, token) in sentence.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(token);
            }
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a TokenCorpus {
    type Item = &'a Sentence;
    type IntoIter = std::slice::Iter<'a, Sentence>;

    fn into_iter(self) -> Self::IntoIter {
        self.sentences.iter()
    }
}

/// Reads a whole file as UTF-8, reporting the byte offset of the first bad sequence.
pub(crate) fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

pub fn read_token_corpus(path: impl AsRef<Path>) -> Result<TokenCorpus> {
    let path = path.as_ref();
    Ok(TokenCorpus::parse(&read_utf8(path)?))
}

pub fn write_token_corpus(corpus: &TokenCorpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, corpus.to_text()).map_err(|e| Error::io(path, e))
}

/// Exact token frequencies of a corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    counts: BTreeMap<String, u64>,
}

impl Vocabulary {
    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.counts.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &str> + '_ {
        self.counts.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.counts.iter().map(|(w, &c)| (w.as_str(), c))
    }
}

impl<S: AsRef<str>> FromIterator<S> for Vocabulary {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut counts = BTreeMap::new();
        for word in iter {
            *counts.entry(word.as_ref().to_owned()).or_insert(0) += 1;
        }
        Vocabulary { counts }
    }
}

pub fn build_vocabulary(corpus: &TokenCorpus) -> Vocabulary {
    corpus.iter().flatten().collect()
}
