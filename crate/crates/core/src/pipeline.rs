//! The four preprocessing configurations: baseline, suffix separation,
//! compound splitting, and compound splitting followed by suffix separation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::compound::{split_compound, CompoundSuffixSet, DEFAULT_MARGIN};
use crate::corpus::{Sentence, TokenCorpus};
use crate::error::{Error, Result};
use crate::marker::{self, push_pieces, Marker};
use crate::suffix::{split_word, SuffixList};

/// POS tag whose tokens are left alone when tag-based exclusion is enabled.
pub const PROPER_NOUN_TAG: &str = "NNP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Baseline,
    SuffixSeparation,
    CompoundSplitting,
    CompoundThenSuffix,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Baseline,
        Mode::SuffixSeparation,
        Mode::CompoundSplitting,
        Mode::CompoundThenSuffix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Baseline => "bl",
            Mode::SuffixSeparation => "ss",
            Mode::CompoundSplitting => "cs",
            Mode::CompoundThenSuffix => "cs+ss",
        }
    }

    /// System label in the `BL+...` style used for result tables.
    pub fn label(self) -> &'static str {
        match self {
            Mode::Baseline => "BL",
            Mode::SuffixSeparation => "BL+SS",
            Mode::CompoundSplitting => "BL+CS",
            Mode::CompoundThenSuffix => "BL+CS+SS",
        }
    }

    pub fn uses_suffixes(self) -> bool {
        matches!(self, Mode::SuffixSeparation | Mode::CompoundThenSuffix)
    }

    pub fn uses_compounds(self) -> bool {
        matches!(self, Mode::CompoundSplitting | Mode::CompoundThenSuffix)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bl" => Ok(Mode::Baseline),
            "ss" | "bl+ss" => Ok(Mode::SuffixSeparation),
            "cs" | "bl+cs" => Ok(Mode::CompoundSplitting),
            "cs+ss" | "cs_ss" | "bl+cs+ss" => Ok(Mode::CompoundThenSuffix),
            _ => Err(Error::InvalidParameter(format!(
                "unknown mode {s:?} (expected bl, ss, cs or cs+ss)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub mode: Mode,
    pub suffix_list: Option<SuffixList>,
    pub compound_set: Option<CompoundSuffixSet>,
    pub marker: Option<Marker>,
    /// POS tags parallel to the input; tokens tagged NNP are not segmented.
    pub nnp_tags: Option<TokenCorpus>,
    pub margin: usize,
}

impl PipelineConfig {
    pub fn new(mode: Mode) -> Self {
        PipelineConfig {
            mode,
            suffix_list: None,
            compound_set: None,
            marker: None,
            nnp_tags: None,
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_suffixes(mut self, list: SuffixList) -> Self {
        self.suffix_list = Some(list);
        self
    }

    pub fn with_compounds(mut self, set: CompoundSuffixSet) -> Self {
        self.compound_set = Some(set);
        self
    }

    pub fn with_marker(mut self, marker: Marker) -> Self {
        self.marker = Some(marker);
        self
    }

    pub fn with_nnp_tags(mut self, tags: TokenCorpus) -> Self {
        self.nnp_tags = Some(tags);
        self
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode.uses_suffixes() && self.suffix_list.is_none() {
            return Err(Error::MissingResource {
                mode: self.mode.name(),
                resource: "suffix list",
            });
        }
        if self.mode.uses_compounds() && self.compound_set.is_none() {
            return Err(Error::MissingResource {
                mode: self.mode.name(),
                resource: "compound-suffix set",
            });
        }
        Ok(())
    }

    /// Segments one word according to the configured mode.
    ///
    /// In `cs+ss` mode suffix separation runs on every constituent produced
    /// by compound splitting, once per constituent.
    pub fn segment<'a>(&self, word: &'a str) -> Vec<&'a str> {
        let compounds = self.compound_set.as_ref().filter(|_| self.mode.uses_compounds());
        let suffixes = self.suffix_list.as_ref().filter(|_| self.mode.uses_suffixes());
        let constituents = match compounds {
            Some(set) => split_compound(word, set, self.margin),
            None => vec![word],
        };
        match suffixes {
            Some(list) => constituents
                .into_iter()
                .flat_map(|c| {
                    let split = split_word(c, list);
                    std::iter::once(split.stem).chain(split.suffix)
                })
                .collect(),
            None => constituents,
        }
    }

    fn check_inputs(&self, corpus: &TokenCorpus) -> Result<()> {
        self.validate()?;
        if let Some(tags) = &self.nnp_tags {
            if tags.len() != corpus.len() {
                return Err(Error::LengthMismatch {
                    left: corpus.len(),
                    right: tags.len(),
                });
            }
            for (i, (s, t)) in corpus.iter().zip(tags).enumerate() {
                if s.len() != t.len() {
                    return Err(Error::TagMismatch {
                        sentence: i,
                        tokens: s.len(),
                        tags: t.len(),
                    });
                }
            }
        }
        if let Some(m) = &self.marker {
            for (i, sentence) in corpus.iter().enumerate() {
                if let Some(token) = sentence.iter().find(|t| t.ends_with(m.as_str())) {
                    return Err(Error::MarkerCollision {
                        sentence: i,
                        token: token.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn process_sentence(&self, index: usize, sentence: &[String]) -> (Sentence, Vec<usize>) {
        let tags = self.nnp_tags.as_ref().map(|t| &t.sentences()[index]);
        let mut out = Vec::with_capacity(sentence.len());
        let mut origins = Vec::with_capacity(sentence.len());
        for (w, word) in sentence.iter().enumerate() {
            let skip = tags.is_some_and(|t| t[w] == PROPER_NOUN_TAG);
            let pieces = if skip { vec![word.as_str()] } else { self.segment(word) };
            origins.extend(std::iter::repeat_n(w, pieces.len()));
            push_pieces(&mut out, &pieces, self.marker.as_ref());
        }
        (out, origins)
    }

    /// Like [`preprocess`], also returning for every output token the index
    /// of the input word it came from.
    pub fn preprocess_with_origins(&self, corpus: &TokenCorpus) -> Result<(TokenCorpus, Vec<Vec<usize>>)> {
        self.check_inputs(corpus)?;
        let (sentences, origins): (Vec<_>, Vec<_>) = corpus
            .sentences()
            .par_iter()
            .enumerate()
            .map(|(i, s)| self.process_sentence(i, s))
            .unzip();
        Ok((TokenCorpus::from_valid(sentences), origins))
    }
}

/// Runs the configured preprocessing over every sentence. Sentences are
/// processed in parallel on the current rayon pool; output order is the
/// input order.
pub fn preprocess(corpus: &TokenCorpus, config: &PipelineConfig) -> Result<TokenCorpus> {
    config.preprocess_with_origins(corpus).map(|(c, _)| c)
}

/// Undoes marked segmentation by gluing each marker-bearing token to its successor.
pub fn reconstruct(corpus: &TokenCorpus, marker: &Marker) -> Result<TokenCorpus> {
    let sentences = corpus
        .iter()
        .enumerate()
        .map(|(i, s)| marker::join_sentence(s, marker, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(TokenCorpus::from_valid(sentences))
}

/// Source-word index of every token in a marked corpus.
pub fn token_origins(corpus: &TokenCorpus, marker: &Marker) -> Vec<Vec<usize>> {
    corpus.iter().map(|s| marker::origins(s, marker)).collect()
}
