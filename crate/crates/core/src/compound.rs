//! Compound splitting.
//!
//! A compound-suffix inventory is induced from a monolingual vocabulary: a
//! word `v` becomes a compound suffix when some other vocabulary word `w`
//! ends with it and is more than `margin` code points longer. Compound words
//! are then split by repeatedly stripping the longest qualifying member off
//! the end of the word.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::corpus::{char_len, is_valid_token, read_utf8, TokenCorpus, Vocabulary};
use crate::error::{Error, Result};
use crate::marker::{map_words, Marker};

pub const DEFAULT_MARGIN: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompoundSuffixSet {
    /// suffix -> number of distinct vocabulary words it was seen trailing
    provenance: BTreeMap<String, u64>,
    /// members with their code-point length, longest first
    by_length: Vec<(String, usize)>,
}

impl CompoundSuffixSet {
    /// Builds a set from explicit `(suffix, count)` pairs. Later duplicates
    /// overwrite earlier ones.
    pub fn from_counts<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut provenance = BTreeMap::new();
        for (suffix, count) in entries {
            let suffix = suffix.into();
            if !is_valid_token(&suffix) {
                return Err(Error::InvalidToken(suffix));
            }
            provenance.insert(suffix, count);
        }
        Ok(Self::from_provenance(provenance))
    }

    fn from_provenance(provenance: BTreeMap<String, u64>) -> Self {
        let mut by_length: Vec<(String, usize)> = provenance
            .keys()
            .map(|s| (s.clone(), char_len(s)))
            .collect();
        // BTreeMap iteration is already lexicographic; a stable sort keeps it as the tiebreak.
        by_length.sort_by_key(|(_, len)| Reverse(*len));
        CompoundSuffixSet {
            provenance,
            by_length,
        }
    }

    pub fn contains(&self, suffix: &str) -> bool {
        self.provenance.contains_key(suffix)
    }

    pub fn count(&self, suffix: &str) -> Option<u64> {
        self.provenance.get(suffix).copied()
    }

    pub fn len(&self) -> usize {
        self.provenance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.provenance.is_empty()
    }

    /// Members in lexicographic order with their provenance counts.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.provenance.iter().map(|(s, &c)| (s.as_str(), c))
    }

    /// Drops members observed trailing fewer than `min_count` words.
    pub fn with_min_count(self, min_count: u64) -> Self {
        let provenance = self
            .provenance
            .into_iter()
            .filter(|&(_, c)| c >= min_count)
            .collect();
        Self::from_provenance(provenance)
    }
}

/// Induces the compound-suffix inventory of `vocab`.
///
/// Each word `w` contributes at most one hit per suffix length, so the
/// provenance count is the number of distinct words `v` was observed trailing.
pub fn induce_compound_suffixes(vocab: &Vocabulary, margin: usize) -> CompoundSuffixSet {
    let mut hits: HashMap<&str, u64> = HashMap::new();
    for word in vocab.words() {
        let word_len = char_len(word);
        // longest admissible suffix: len(v) < len(w) - margin
        let Some(max_len) = word_len.checked_sub(margin + 1) else {
            continue;
        };
        if max_len == 0 {
            continue;
        }
        // Start offsets of suffixes with 1..=max_len code points.
        for (start, _) in word.char_indices().skip(word_len - max_len) {
            let candidate = &word[start..];
            if vocab.contains(candidate) {
                *hits.entry(candidate).or_insert(0) += 1;
            }
        }
    }
    let provenance = hits.into_iter().map(|(s, c)| (s.to_owned(), c)).collect();
    CompoundSuffixSet::from_provenance(provenance)
}

/// Splits `word` into constituents in surface order.
///
/// A member `s` is stripped from the current residue `r` when `r` ends with
/// `s`, `len(r) > len(s)` and `len(word) > len(s) + margin`, the margin being
/// measured against the whole word as during induction. The longest
/// qualifying member is stripped first and stripping repeats until nothing
/// qualifies.
pub fn split_compound<'a>(word: &'a str, set: &CompoundSuffixSet, margin: usize) -> Vec<&'a str> {
    let word_len = char_len(word);
    let mut residue = word;
    let mut residue_len = word_len;
    let mut pieces = Vec::new();
    loop {
        let found = set.by_length.iter().find(|(s, len)| {
            residue_len > *len && word_len > len + margin && residue.ends_with(s.as_str())
        });
        match found {
            Some((s, len)) => {
                let cut = residue.len() - s.len();
                pieces.push(&residue[cut..]);
                residue = &residue[..cut];
                residue_len -= len;
            }
            None => break,
        }
    }
    pieces.push(residue);
    pieces.reverse();
    pieces
}

pub fn apply_compound_splitting(
    corpus: &TokenCorpus,
    set: &CompoundSuffixSet,
    margin: usize,
    marker: Option<&Marker>,
) -> TokenCorpus {
    map_words(corpus, marker, |word| {
        split_compound(word, set, margin)
            .into_iter()
            .map(str::to_owned)
            .collect()
    })
}

/// Renders the set as `suffix<TAB>count` lines in lexicographic order.
pub fn format_compound_suffixes(set: &CompoundSuffixSet) -> String {
    let mut out = String::new();
    for (suffix, count) in set.iter() {
        let _ = writeln!(out, "{suffix}\t{count}");
    }
    out
}

pub fn save_compound_suffixes(set: &CompoundSuffixSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_compound_suffixes(set)).map_err(|e| Error::io(path, e))
}

pub fn load_compound_suffixes(path: impl AsRef<Path>) -> Result<CompoundSuffixSet> {
    let path = path.as_ref();
    parse_compound_suffixes(&read_utf8(path)?).map_err(|(line, reason)| Error::Malformed {
        path: path.to_path_buf(),
        line,
        reason,
    })
}

/// Parses `suffix<TAB>count` lines. Errors carry the 1-based line number.
pub fn parse_compound_suffixes(text: &str) -> std::result::Result<CompoundSuffixSet, (usize, String)> {
    let mut provenance = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (suffix, count) = line
            .split_once('\t')
            .ok_or_else(|| (lineno, "expected suffix<TAB>count".to_owned()))?;
        if !is_valid_token(suffix) {
            return Err((lineno, format!("invalid suffix {suffix:?}")));
        }
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| (lineno, format!("invalid count {count:?}")))?;
        if provenance.insert(suffix.to_owned(), count).is_some() {
            return Err((lineno, format!("duplicate suffix {suffix:?}")));
        }
    }
    Ok(CompoundSuffixSet::from_provenance(provenance))
}
