use serde::Serialize;

use super::{check_corpora, check_order, ngram_counts};
use crate::corpus::TokenCorpus;
use crate::error::{Error, Result};

pub const DEFAULT_BLEU_ORDER: usize = 4;

/// Corpus BLEU with its sufficient statistics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BleuScore {
    /// In `[0, 1]`.
    pub score: f64,
    /// Clipped n-gram matches, index `n - 1`.
    pub matches: Vec<u64>,
    /// Hypothesis n-gram counts, index `n - 1`.
    pub totals: Vec<u64>,
    /// Modified precisions. Orders with no hypothesis n-grams at all are 1.
    pub precisions: Vec<f64>,
    pub brevity_penalty: f64,
    pub hyp_len: usize,
    pub ref_len: usize,
}

impl BleuScore {
    fn from_stats(matches: Vec<u64>, totals: Vec<u64>, hyp_len: usize, ref_len: usize) -> Self {
        let precisions: Vec<f64> = matches
            .iter()
            .zip(&totals)
            .map(|(&m, &t)| if t == 0 { 1.0 } else { m as f64 / t as f64 })
            .collect();
        let brevity_penalty = if hyp_len < ref_len {
            (1.0 - ref_len as f64 / hyp_len as f64).exp()
        } else {
            1.0
        };
        let score = if precisions.contains(&0.0) {
            0.0
        } else {
            let log_mean = precisions.iter().map(|p| p.ln()).sum::<f64>() / precisions.len() as f64;
            brevity_penalty * log_mean.exp()
        };
        BleuScore {
            score,
            matches,
            totals,
            precisions,
            brevity_penalty,
            hyp_len,
            ref_len,
        }
    }
}

/// Clipped match and total counts of one segment for orders `1..=max_n`.
fn segment_stats<S: AsRef<str>>(hyp: &[S], reference: &[S], max_n: usize) -> (Vec<u64>, Vec<u64>) {
    let mut matches = vec![0; max_n];
    let mut totals = vec![0; max_n];
    for n in 1..=max_n {
        let ref_counts = ngram_counts(reference, n);
        for (gram, count) in ngram_counts(hyp, n) {
            totals[n - 1] += count;
            matches[n - 1] += count.min(ref_counts.get(&gram).copied().unwrap_or(0));
        }
    }
    (matches, totals)
}

/// Corpus-level BLEU: counts are pooled over all segments before the
/// geometric mean is taken. Any order with zero clipped matches (and at
/// least one hypothesis n-gram) makes the score 0.
pub fn bleu(hyps: &TokenCorpus, refs: &TokenCorpus, max_n: usize) -> Result<BleuScore> {
    check_order(max_n)?;
    check_corpora(hyps, refs)?;
    let hyp_len = hyps.token_count();
    if hyp_len == 0 {
        return Err(Error::EmptyHypothesis);
    }
    let mut matches = vec![0; max_n];
    let mut totals = vec![0; max_n];
    for (h, r) in hyps.iter().zip(refs) {
        let (m, t) = segment_stats(h, r, max_n);
        for n in 0..max_n {
            matches[n] += m[n];
            totals[n] += t[n];
        }
    }
    Ok(BleuScore::from_stats(matches, totals, hyp_len, refs.token_count()))
}

/// Diagnostic sentence-level BLEU with add-one smoothing on orders 2 and up.
/// Not comparable to corpus BLEU.
pub fn sentence_bleu<S: AsRef<str>>(hyp: &[S], reference: &[S], max_n: usize) -> f64 {
    if hyp.is_empty() || max_n == 0 {
        return 0.0;
    }
    let (matches, totals) = segment_stats(hyp, reference, max_n);
    let mut log_sum = 0.0;
    for n in 0..max_n {
        let p = if n == 0 {
            matches[0] as f64 / totals[0] as f64
        } else {
            (matches[n] + 1) as f64 / (totals[n] + 1) as f64
        };
        if p == 0.0 {
            return 0.0;
        }
        log_sum += p.ln();
    }
    let bp = if hyp.len() < reference.len() {
        (1.0 - reference.len() as f64 / hyp.len() as f64).exp()
    } else {
        1.0
    };
    bp * (log_sum / max_n as f64).exp()
}
