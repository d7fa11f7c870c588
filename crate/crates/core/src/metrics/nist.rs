use std::collections::HashMap;

use serde::Serialize;

use super::{check_corpora, check_order, ngram_counts};
use crate::corpus::TokenCorpus;
use crate::error::{Error, Result};

pub const DEFAULT_NIST_ORDER: usize = 5;

/// Information weights of reference n-grams:
/// `info(w1..wn) = log2(count(w1..w(n-1)) / count(w1..wn))`, where the
/// empty prefix counts every reference token.
#[derive(Clone, Debug, PartialEq)]
pub struct InfoWeights {
    weights: HashMap<Vec<String>, f64>,
}

impl InfoWeights {
    pub fn get(&self, gram: &[&str]) -> Option<f64> {
        let key: Vec<String> = gram.iter().map(|s| s.to_string()).collect();
        self.weights.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[String], f64)> + '_ {
        self.weights.iter().map(|(g, &w)| (g.as_slice(), w))
    }
}

pub fn information_weights(refs: &TokenCorpus, max_n: usize) -> InfoWeights {
    let mut counts: HashMap<Vec<&str>, u64> = HashMap::new();
    for sentence in refs {
        for n in 1..=max_n {
            for (gram, c) in ngram_counts(sentence, n) {
                *counts.entry(gram).or_insert(0) += c;
            }
        }
    }
    let total_words = refs.token_count() as f64;
    let weights = counts
        .iter()
        .map(|(gram, &count)| {
            let prefix = if gram.len() == 1 {
                total_words
            } else {
                counts[&gram[..gram.len() - 1]] as f64
            };
            let key = gram.iter().map(|s| s.to_string()).collect();
            (key, (prefix / count as f64).log2())
        })
        .collect();
    InfoWeights { weights }
}

/// Length factor `exp(beta * ln(ratio)^2)` for `ratio < 1`, with `beta`
/// chosen so that a ratio of 2/3 gives 0.5.
pub fn nist_brevity_penalty(hyp_len: usize, ref_len: usize) -> f64 {
    if ref_len == 0 || hyp_len >= ref_len {
        return 1.0;
    }
    if hyp_len == 0 {
        return 0.0;
    }
    let beta = 0.5f64.ln() / 1.5f64.ln().powi(2);
    let ratio = hyp_len as f64 / ref_len as f64;
    (beta * ratio.ln().powi(2)).exp()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NistScore {
    pub score: f64,
    /// Information summed over clipped matches, index `n - 1`.
    pub info: Vec<f64>,
    /// Hypothesis n-gram counts, index `n - 1`.
    pub totals: Vec<u64>,
    /// `info / totals` per order (0 when an order has no hypothesis n-grams).
    pub order_scores: Vec<f64>,
    pub brevity_penalty: f64,
    pub hyp_len: usize,
    pub ref_len: usize,
}

/// Corpus NIST with information weights taken from `refs`.
pub fn nist(hyps: &TokenCorpus, refs: &TokenCorpus, max_n: usize) -> Result<NistScore> {
    check_order(max_n)?;
    check_corpora(hyps, refs)?;
    let hyp_len = hyps.token_count();
    if hyp_len == 0 {
        return Err(Error::EmptyHypothesis);
    }
    let weights = information_weights(refs, max_n);
    let mut info = vec![0.0; max_n];
    let mut totals = vec![0; max_n];
    for (h, r) in hyps.iter().zip(refs) {
        for n in 1..=max_n {
            let ref_counts = ngram_counts(r, n);
            for (gram, count) in ngram_counts(h, n) {
                totals[n - 1] += count;
                if let Some(&rc) = ref_counts.get(&gram) {
                    let w = weights.get(&gram).expect("reference n-gram has a weight");
                    info[n - 1] += count.min(rc) as f64 * w;
                }
            }
        }
    }
    let order_scores: Vec<f64> = info
        .iter()
        .zip(&totals)
        .map(|(&i, &t)| if t == 0 { 0.0 } else { i / t as f64 })
        .collect();
    let ref_len = refs.token_count();
    let brevity_penalty = nist_brevity_penalty(hyp_len, ref_len);
    Ok(NistScore {
        score: brevity_penalty * order_scores.iter().sum::<f64>(),
        info,
        totals,
        order_scores,
        brevity_penalty,
        hyp_len,
        ref_len,
    })
}
