//! Suffix separation: split a word into a stem and at most one suffix taken
//! from a hand-curated list, preferring the longest suffix that matches.

use std::cmp::Reverse;
use std::path::Path;

use crate::corpus::{char_len, is_valid_token, read_utf8, TokenCorpus};
use crate::error::{Error, Result};
use crate::marker::{map_words, Marker};

/// Suffix inventory ordered longest first (code points), ties lexicographic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuffixList {
    // (suffix, length in code points)
    entries: Vec<(String, usize)>,
}

impl SuffixList {
    /// Deduplicates and sorts `suffixes`. Empty strings and strings with
    /// whitespace are rejected.
    pub fn new<I, S>(suffixes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut entries = Vec::new();
        for suffix in suffixes {
            let suffix = suffix.into();
            if !is_valid_token(&suffix) {
                return Err(Error::InvalidToken(suffix));
            }
            let len = char_len(&suffix);
            entries.push((suffix, len));
        }
        entries.sort_by(|(a, la), (b, lb)| Reverse(la).cmp(&Reverse(lb)).then_with(|| a.cmp(b)));
        entries.dedup_by(|a, b| a.0 == b.0);
        Ok(SuffixList { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.iter().map(|(s, _)| s.as_str())
    }
}

/// Parses a suffix list: one suffix per line, blank lines and `#` comments ignored.
pub fn parse_suffix_list(text: &str) -> Result<SuffixList> {
    SuffixList::new(
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#')),
    )
}

/// Loads a suffix list file. An empty result is logged as a warning, not an error.
pub fn load_suffix_list(path: impl AsRef<Path>) -> Result<SuffixList> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    let list = parse_suffix_list(&text).map_err(|e| match e {
        Error::InvalidToken(t) => Error::Malformed {
            path: path.to_path_buf(),
            line: text.lines().position(|l| l.trim() == t).map_or(0, |i| i + 1),
            reason: format!("invalid suffix {t:?}"),
        },
        other => other,
    })?;
    if list.is_empty() {
        log::warn!("{}: suffix list is empty; suffix separation will be a no-op", path.display());
    }
    Ok(list)
}

/// A word decomposed into a stem and an optional suffix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Split<'a> {
    pub stem: &'a str,
    pub suffix: Option<&'a str>,
}

impl<'a> Split<'a> {
    pub fn unsplit(word: &'a str) -> Self {
        Split { stem: word, suffix: None }
    }

    pub fn pieces(&self) -> Vec<String> {
        let mut pieces = vec![self.stem.to_owned()];
        pieces.extend(self.suffix.map(str::to_owned));
        pieces
    }
}

/// Splits off the longest listed suffix `s` with `word.ends_with(s)` and
/// `len(word) > len(s)`. At most one suffix is removed.
pub fn separate_suffix<'a>(word: &'a str, list: &SuffixList) -> Result<Split<'a>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(split_word(word, list))
}

pub(crate) fn split_word<'a>(word: &'a str, list: &SuffixList) -> Split<'a> {
    let word_len = char_len(word);
    list.entries
        .iter()
        .find(|(suffix, len)| word_len > *len && word.ends_with(suffix.as_str()))
        .map_or(Split::unsplit(word), |(suffix, _)| Split {
            stem: &word[..word.len() - suffix.len()],
            suffix: Some(&word[word.len() - suffix.len()..]),
        })
}

/// Applies suffix separation to every token. With a marker the stem is
/// emitted as `stem + marker`.
pub fn apply_suffix_separation(
    corpus: &TokenCorpus,
    list: &SuffixList,
    marker: Option<&Marker>,
) -> TokenCorpus {
    map_words(corpus, marker, |word| split_word(word, list).pieces())
}
