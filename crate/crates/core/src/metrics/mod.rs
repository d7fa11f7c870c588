//! Corpus-level MT evaluation: BLEU, NIST and TER against a single
//! reference per segment.

mod bleu;
mod nist;
mod report;
mod ter;

use std::collections::HashMap;

pub use bleu::{bleu, sentence_bleu, BleuScore, DEFAULT_BLEU_ORDER};
pub use nist::{information_weights, nist, nist_brevity_penalty, InfoWeights, NistScore, DEFAULT_NIST_ORDER};
pub use report::{evaluate, EvalReport};
pub use ter::{edit_distance, sentence_ter, ter, wer, TerScore, TerSentence};

use crate::corpus::TokenCorpus;
use crate::error::{Error, Result};

/// Checks the preconditions shared by all metrics.
fn check_corpora(hyps: &TokenCorpus, refs: &TokenCorpus) -> Result<()> {
    if hyps.len() != refs.len() {
        return Err(Error::LengthMismatch {
            left: hyps.len(),
            right: refs.len(),
        });
    }
    if let Some(i) = refs.iter().position(Vec::is_empty) {
        return Err(Error::EmptyReference(i));
    }
    Ok(())
}

fn check_order(max_n: usize) -> Result<()> {
    if max_n == 0 {
        return Err(Error::InvalidParameter("n-gram order must be at least 1".into()));
    }
    Ok(())
}

/// Counts of every n-gram of order `n` in `tokens`.
fn ngram_counts<S: AsRef<str>>(tokens: &[S], n: usize) -> HashMap<Vec<&str>, u64> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            let key: Vec<&str> = window.iter().map(AsRef::as_ref).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    counts
}
