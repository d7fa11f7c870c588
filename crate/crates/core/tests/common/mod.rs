//! Random generators and brute-force oracles shared by the integration tests.
//! Nothing here calls into the code paths it is used to check.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use morphsplit_core::corpus::TokenCorpus;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const LETTERS: &[&str] = &["a", "b", "c", "क", "ा"];

pub fn random_word(rng: &mut ChaCha8Rng, min: usize, max: usize) -> String {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| LETTERS[rng.gen_range(0..LETTERS.len())]).collect()
}

pub fn random_sentence(rng: &mut ChaCha8Rng, min: usize, max: usize, alphabet: &[&str]) -> Vec<String> {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())].to_owned()).collect()
}

/// Hypothesis/reference style pair of corpora; reference sentences are never empty.
pub fn random_parallel(
    rng: &mut ChaCha8Rng,
    min_sents: usize,
    max_sents: usize,
    min_len: usize,
    max_len: usize,
    alphabet: &[&str],
) -> (TokenCorpus, TokenCorpus) {
    let n = rng.gen_range(min_sents..=max_sents);
    let mut h = Vec::with_capacity(n);
    let mut r = Vec::with_capacity(n);
    for _ in 0..n {
        h.push(random_sentence(rng, min_len, max_len, alphabet));
        r.push(random_sentence(rng, min_len.max(1), max_len, alphabet));
    }
    (TokenCorpus::new(h).unwrap(), TokenCorpus::new(r).unwrap())
}

pub fn random_word_corpus(rng: &mut ChaCha8Rng, sents: usize, words: usize) -> TokenCorpus {
    let n = rng.gen_range(0..=sents);
    TokenCorpus::new(
        (0..n)
            .map(|_| (0..rng.gen_range(0..=words)).map(|_| random_word(rng, 1, 12)).collect())
            .collect(),
    )
    .unwrap()
}

/// `size` tokens drawn from short base words and their concatenations, so
/// that many vocabulary words end with other vocabulary words.
pub fn random_compounding_corpus(rng: &mut ChaCha8Rng, size: usize) -> TokenCorpus {
    let base: Vec<String> = (0..rng.gen_range(5..40)).map(|_| random_word(rng, 1, 6)).collect();
    let tokens: Vec<String> = (0..size)
        .map(|_| {
            let parts = rng.gen_range(1..=3);
            (0..parts).map(|_| base[rng.gen_range(0..base.len())].as_str()).collect()
        })
        .collect();
    TokenCorpus::new(vec![tokens]).unwrap()
}

fn chars(s: &str) -> usize {
    s.chars().count()
}

/// Double loop over the vocabulary applying the induction predicate
/// literally. Returns `(suffix, number of words it trails)` sorted by suffix.
pub fn induction_oracle(vocab: &[&str], margin: usize) -> Vec<(String, u64)> {
    let mut out = Vec::new();
    for &v in vocab {
        let mut count = 0;
        for &w in vocab {
            if w.ends_with(v) && chars(w) > chars(v) + margin {
                count += 1;
            }
        }
        if count > 0 {
            out.push((v.to_owned(), count));
        }
    }
    out.sort();
    out
}

fn same_gram(a: &[String], i: usize, b: &[String], j: usize, n: usize) -> bool {
    (0..n).all(|k| a[i + k] == b[j + k])
}

fn occurrences(seq: &[String], gram: &[String]) -> u64 {
    let n = gram.len();
    if seq.len() < n {
        return 0;
    }
    (0..=seq.len() - n).filter(|&j| same_gram(seq, j, gram, 0, n)).count() as u64
}

/// Corpus BLEU from positional scans: each distinct hypothesis n-gram is
/// counted at its first occurrence and clipped against the reference.
pub fn bleu_oracle(hyps: &TokenCorpus, refs: &TokenCorpus, max_n: usize) -> f64 {
    let mut matches = vec![0u64; max_n + 1];
    let mut totals = vec![0u64; max_n + 1];
    for (h, r) in hyps.iter().zip(refs) {
        for n in 1..=max_n {
            if h.len() < n {
                continue;
            }
            for i in 0..=h.len() - n {
                totals[n] += 1;
                let first = (0..i).all(|k| !same_gram(h, k, h, i, n));
                if first {
                    let gram = &h[i..i + n];
                    matches[n] += occurrences(h, gram).min(occurrences(r, gram));
                }
            }
        }
    }
    let c = hyps.token_count() as f64;
    let r = refs.token_count() as f64;
    let mut log_sum = 0.0;
    for n in 1..=max_n {
        if totals[n] == 0 {
            continue; // precision 1
        }
        if matches[n] == 0 {
            return 0.0;
        }
        log_sum += (matches[n] as f64 / totals[n] as f64).ln();
    }
    let bp = if c < r { (1.0 - r / c).exp() } else { 1.0 };
    bp * (log_sum / max_n as f64).exp()
}

fn levenshtein(a: &[String], b: &[String]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Exact TER edit count: breadth-first search over every sequence of block
/// moves (any block, any destination), minimizing `moves + levenshtein`.
pub fn ter_oracle(hyp: &[String], reference: &[String]) -> usize {
    let mut depth: HashMap<Vec<String>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    depth.insert(hyp.to_vec(), 0);
    queue.push_back(hyp.to_vec());
    let mut best = usize::MAX;
    while let Some(seq) = queue.pop_front() {
        let d = depth[&seq];
        best = best.min(d + levenshtein(&seq, reference));
        if d + 1 >= best {
            continue;
        }
        let n = seq.len();
        for start in 0..n {
            for len in 1..=n - start {
                let block = &seq[start..start + len];
                let mut rest = seq[..start].to_vec();
                rest.extend_from_slice(&seq[start + len..]);
                for dest in 0..=rest.len() {
                    let mut moved = rest[..dest].to_vec();
                    moved.extend_from_slice(block);
                    moved.extend_from_slice(&rest[dest..]);
                    if !depth.contains_key(&moved) {
                        depth.insert(moved.clone(), d + 1);
                        queue.push_back(moved);
                    }
                }
            }
        }
    }
    best
}
