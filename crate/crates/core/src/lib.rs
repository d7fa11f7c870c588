//! Preprocessing and evaluation toolkit for translating out of
//! agglutinative languages.
//!
//! * [`suffix`] separates one case suffix from a word, longest match first.
//! * [`compound`] induces compound suffixes from a monolingual vocabulary
//!   and splits compounds into constituents.
//! * [`pipeline`] chains them into the `bl`, `ss`, `cs` and `cs+ss`
//!   configurations, optionally with a reversible marker.
//! * [`metrics`] scores system output with BLEU, NIST and TER.
//! * [`aligner`] is a small Model 1 aligner used to check that
//!   segmentation improves word alignment.

pub mod aligner;
pub mod compound;
pub mod corpus;
pub mod demo;
pub mod error;
pub mod marker;
pub mod metrics;
pub mod pipeline;
pub mod suffix;
pub mod synth;

pub use compound::{
    apply_compound_splitting, induce_compound_suffixes, load_compound_suffixes, save_compound_suffixes,
    split_compound, CompoundSuffixSet,
};
pub use corpus::{build_vocabulary, read_token_corpus, write_token_corpus, Sentence, TokenCorpus, Vocabulary};
pub use error::{Error, Result};
pub use marker::Marker;
pub use pipeline::{preprocess, reconstruct, Mode, PipelineConfig};
pub use suffix::{apply_suffix_separation, load_suffix_list, separate_suffix, Split, SuffixList};
