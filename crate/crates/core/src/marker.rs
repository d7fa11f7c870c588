//! Reversible rendering of segmented words.
//!
//! A word split into pieces `p1 .. pk` is emitted as `p1M .. p(k-1)M pk`
//! where `M` is the marker, so every token that ends in `M` is glued to its
//! successor when the original text is reconstructed.

use std::fmt;

use crate::corpus::{Sentence, TokenCorpus};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Marker(String);

impl Marker {
    pub fn new(marker: impl Into<String>) -> Result<Self> {
        let marker = marker.into();
        if crate::corpus::is_valid_token(&marker) {
            Ok(Marker(marker))
        } else {
            Err(Error::InvalidMarker(marker))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Appends the rendered pieces of one word to `out`.
pub(crate) fn push_pieces<S: AsRef<str>>(out: &mut Sentence, pieces: &[S], marker: Option<&Marker>) {
    let last = pieces.len().saturating_sub(1);
    for (i, piece) in pieces.iter().enumerate() {
        let piece = piece.as_ref();
        match marker {
            Some(m) if i < last => out.push(format!("{piece}{m}")),
            _ => out.push(piece.to_owned()),
        }
    }
}

/// Rewrites every token of `corpus` into the pieces returned by `segment`.
pub(crate) fn map_words<F>(corpus: &TokenCorpus, marker: Option<&Marker>, segment: F) -> TokenCorpus
where
    F: Fn(&str) -> Vec<String>,
{
    let sentences = corpus
        .iter()
        .map(|sentence| {
            let mut out = Vec::with_capacity(sentence.len());
            for word in sentence {
                push_pieces(&mut out, &segment(word), marker);
            }
            out
        })
        .collect();
    TokenCorpus::from_valid(sentences)
}

/// Glues marker-bearing tokens to their successors within one sentence.
pub(crate) fn join_sentence(sentence: &[String], marker: &Marker, index: usize) -> Result<Sentence> {
    let mut out = Vec::with_capacity(sentence.len());
    let mut pending = String::new();
    for token in sentence {
        match token.strip_suffix(marker.as_str()) {
            Some(head) => pending.push_str(head),
            None => {
                pending.push_str(token);
                out.push(std::mem::take(&mut pending));
            }
        }
    }
    if sentence.last().is_some_and(|t| t.ends_with(marker.as_str())) {
        return Err(Error::DanglingMarker { sentence: index });
    }
    Ok(out)
}

/// For each token of a marked sentence, the index of the surface word it came from.
pub(crate) fn origins(sentence: &[String], marker: &Marker) -> Vec<usize> {
    let mut word = 0;
    sentence
        .iter()
        .map(|token| {
            let origin = word;
            if !token.ends_with(marker.as_str()) {
                word += 1;
            }
            origin
        })
        .collect()
}
