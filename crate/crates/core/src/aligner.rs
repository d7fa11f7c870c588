//! Lexical translation model trained by expectation maximization
//! (IBM Model 1) and Viterbi word alignment.
//!
//! Alignments link each target position to at most one source position.
//! They are read and written in the usual `i-j` pairs-per-line format with
//! 0-based source index `i` and target index `j`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::corpus::{read_utf8, Sentence, TokenCorpus};
use crate::error::{Error, Result};

/// Lower bound on the normalizer in the M-step.
const PROB_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, Default)]
struct Interner {
    words: Vec<String>,
    ids: HashMap<String, usize>,
}

impl Interner {
    fn intern(&mut self, word: &str) -> usize {
        if let Some(&id) = self.ids.get(word) {
            return id;
        }
        let id = self.words.len();
        self.words.push(word.to_owned());
        self.ids.insert(word.to_owned(), id);
        id
    }

    fn get(&self, word: &str) -> Option<usize> {
        self.ids.get(word).copied()
    }
}

/// `t(target | source)` for every co-occurring pair seen in training.
#[derive(Clone, Debug)]
pub struct TranslationTable {
    sources: Interner,
    targets: Interner,
    /// Row per source id, sorted by target id. Row 0 is the null word when enabled.
    rows: Vec<Vec<(usize, f64)>>,
    null_word: bool,
}

impl TranslationTable {
    fn offset(&self) -> usize {
        usize::from(self.null_word)
    }

    fn row_prob(&self, row: usize, target: usize) -> f64 {
        let row = &self.rows[row];
        row.binary_search_by_key(&target, |&(t, _)| t)
            .map_or(0.0, |k| row[k].1)
    }

    /// `t(target | source)`, zero for unseen pairs.
    pub fn prob(&self, source: &str, target: &str) -> f64 {
        match (self.sources.get(source), self.targets.get(target)) {
            (Some(s), Some(t)) => self.row_prob(s + self.offset(), t),
            _ => 0.0,
        }
    }

    /// `t(target | NULL)`; zero when the model has no null word.
    pub fn null_prob(&self, target: &str) -> f64 {
        match (self.null_word, self.targets.get(target)) {
            (true, Some(t)) => self.row_prob(0, t),
            _ => 0.0,
        }
    }

    pub fn has_null_word(&self) -> bool {
        self.null_word
    }

    pub fn source_words(&self) -> impl Iterator<Item = &str> + '_ {
        self.sources.words.iter().map(String::as_str)
    }

    /// Translation distribution of one source word, `None` when unseen.
    pub fn distribution(&self, source: &str) -> Option<Vec<(&str, f64)>> {
        let s = self.sources.get(source)?;
        Some(
            self.rows[s + self.offset()]
                .iter()
                .map(|&(t, p)| (self.targets.words[t].as_str(), p))
                .collect(),
        )
    }

    /// Row sums of every distribution, null word first when present.
    pub fn row_sums(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|&(_, p)| p).sum()).collect()
    }

    /// Multiplies every probability of `target` (across all sources) by `factor`.
    /// The result is no longer normalized; used to probe Viterbi invariance.
    pub fn scale_target(&mut self, target: &str, factor: f64) {
        let Some(t) = self.targets.get(target) else {
            return;
        };
        for row in &mut self.rows {
            if let Ok(k) = row.binary_search_by_key(&t, |&(id, _)| id) {
                row[k].1 *= factor;
            }
        }
    }
}

/// Interned sentence pair; source ids are already shifted past the null row.
struct Pair {
    source: Vec<usize>,
    target: Vec<usize>,
}

/// Model 1 EM trainer. Each [`step`](EmTrainer::step) runs one E-step and one M-step.
pub struct EmTrainer {
    pairs: Vec<Pair>,
    table: TranslationTable,
}

impl EmTrainer {
    pub fn new(source: &TokenCorpus, target: &TokenCorpus, null_word: bool) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::LengthMismatch {
                left: source.len(),
                right: target.len(),
            });
        }
        let offset = usize::from(null_word);
        let mut sources = Interner::default();
        let mut targets = Interner::default();
        let mut pairs = Vec::with_capacity(source.len());
        for (s, t) in source.iter().zip(target) {
            let mut src: Vec<usize> = Vec::with_capacity(s.len() + offset);
            if null_word {
                src.push(0);
            }
            src.extend(s.iter().map(|w| sources.intern(w) + offset));
            let tgt: Vec<usize> = t.iter().map(|w| targets.intern(w)).collect();
            // A pair with nothing to align to contributes no evidence.
            if !src.is_empty() && !tgt.is_empty() {
                pairs.push(Pair { source: src, target: tgt });
            }
        }
        if pairs.is_empty() {
            return Err(Error::EmptyCorpus);
        }

        // Uniform over co-occurring targets.
        let mut cooc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); sources.words.len() + offset];
        for pair in &pairs {
            for &s in &pair.source {
                cooc[s].extend(pair.target.iter().copied());
            }
        }
        let rows = cooc
            .into_iter()
            .map(|targets| {
                let p = 1.0 / targets.len().max(1) as f64;
                targets.into_iter().map(|t| (t, p)).collect()
            })
            .collect();

        Ok(EmTrainer {
            pairs,
            table: TranslationTable {
                sources,
                targets,
                rows,
                null_word,
            },
        })
    }

    /// Log-likelihood of the training targets under the current table,
    /// `sum_j ln((1 / L) * sum_i t(f_j | e_i))` with `L` source positions.
    pub fn log_likelihood(&self) -> f64 {
        let mut ll = 0.0;
        for pair in &self.pairs {
            let norm = (pair.source.len() as f64).ln();
            for &f in &pair.target {
                let total: f64 = pair.source.iter().map(|&e| self.table.row_prob(e, f)).sum();
                ll += total.ln() - norm;
            }
        }
        ll
    }

    /// One EM iteration. Returns the log-likelihood under the table that
    /// was current before the update.
    pub fn step(&mut self) -> f64 {
        let mut counts: Vec<Vec<f64>> = self.table.rows.iter().map(|r| vec![0.0; r.len()]).collect();
        let mut ll = 0.0;
        let mut posterior = Vec::new();
        for pair in &self.pairs {
            let norm = (pair.source.len() as f64).ln();
            for &f in &pair.target {
                posterior.clear();
                posterior.extend(pair.source.iter().map(|&e| self.table.row_prob(e, f)));
                let total: f64 = posterior.iter().sum();
                ll += total.ln() - norm;
                for (&e, &p) in pair.source.iter().zip(&posterior) {
                    let row = &self.table.rows[e];
                    let k = row
                        .binary_search_by_key(&f, |&(t, _)| t)
                        .expect("co-occurring pair present in table");
                    counts[e][k] += p / total;
                }
            }
        }
        for (row, row_counts) in self.table.rows.iter_mut().zip(&counts) {
            let total: f64 = row_counts.iter().sum::<f64>().max(PROB_FLOOR);
            for (entry, &c) in row.iter_mut().zip(row_counts) {
                entry.1 = c / total;
            }
        }
        ll
    }

    pub fn table(&self) -> &TranslationTable {
        &self.table
    }

    pub fn into_table(self) -> TranslationTable {
        self.table
    }
}

/// Trains a Model 1 table for `iterations` EM iterations.
pub fn train_em(
    source: &TokenCorpus,
    target: &TokenCorpus,
    iterations: usize,
    null_word: bool,
) -> Result<TranslationTable> {
    if iterations == 0 {
        return Err(Error::InvalidParameter("iterations must be at least 1".into()));
    }
    let mut trainer = EmTrainer::new(source, target, null_word)?;
    for i in 0..iterations {
        let ll = trainer.step();
        log::debug!("EM iteration {}: log-likelihood {ll:.6}", i + 1);
    }
    Ok(trainer.into_table())
}

/// Word alignment of one sentence pair as `(source, target)` index pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alignment {
    links: BTreeSet<(usize, usize)>,
}

impl Alignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, source: usize, target: usize) -> bool {
        self.links.insert((source, target))
    }

    pub fn contains(&self, source: usize, target: usize) -> bool {
        self.links.contains(&(source, target))
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Links ordered by source, then target index.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.links.iter().copied()
    }

    /// Maps source indices through `origin` (e.g. from segmented pieces back
    /// to the words they came from), merging duplicate links.
    pub fn project_source(&self, origin: &[usize]) -> Alignment {
        self.links.iter().map(|&(s, t)| (origin[s], t)).collect()
    }

    /// Number of source positions linked to exactly one target and vice versa.
    pub fn one_to_one_links(&self) -> usize {
        let mut src: HashMap<usize, usize> = HashMap::new();
        let mut tgt: HashMap<usize, usize> = HashMap::new();
        for &(s, t) in &self.links {
            *src.entry(s).or_default() += 1;
            *tgt.entry(t).or_default() += 1;
        }
        self.links
            .iter()
            .filter(|(s, t)| src[s] == 1 && tgt[t] == 1)
            .count()
    }
}

impl FromIterator<(usize, usize)> for Alignment {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Alignment {
            links: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, t)) in self.links.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}-{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Alignment {
    type Err = String;

    fn from_str(line: &str) -> std::result::Result<Self, String> {
        line.split_whitespace()
            .map(|pair| {
                let (s, t) = pair
                    .split_once('-')
                    .ok_or_else(|| format!("expected i-j, got {pair:?}"))?;
                let s = s.parse().map_err(|_| format!("bad source index in {pair:?}"))?;
                let t = t.parse().map_err(|_| format!("bad target index in {pair:?}"))?;
                Ok((s, t))
            })
            .collect()
    }
}

/// Links every target word to its most probable source word, leftmost on
/// ties. Target words whose best source probability is zero stay
/// unaligned, as do words the null word explains strictly better.
pub fn viterbi_align<S: AsRef<str>>(source: &[S], target: &[S], table: &TranslationTable) -> Alignment {
    let mut alignment = Alignment::new();
    for (j, t) in target.iter().enumerate() {
        let t = t.as_ref();
        let mut best: Option<(usize, f64)> = None;
        for (i, s) in source.iter().enumerate() {
            let p = table.prob(s.as_ref(), t);
            if best.is_none_or(|(_, bp)| p > bp) {
                best = Some((i, p));
            }
        }
        if let Some((i, p)) = best {
            if p > 0.0 && !(table.has_null_word() && table.null_prob(t) > p) {
                alignment.insert(i, j);
            }
        }
    }
    alignment
}

pub fn align_corpus(source: &TokenCorpus, target: &TokenCorpus, table: &TranslationTable) -> Result<Vec<Alignment>> {
    if source.len() != target.len() {
        return Err(Error::LengthMismatch {
            left: source.len(),
            right: target.len(),
        });
    }
    Ok(source
        .iter()
        .zip(target)
        .map(|(s, t)| viterbi_align(s, t, table))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlignmentScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub matched: usize,
    pub predicted: usize,
    pub gold: usize,
}

impl AlignmentScore {
    fn from_counts(matched: usize, predicted: usize, gold: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(matched, predicted);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        AlignmentScore {
            precision,
            recall,
            f1,
            matched,
            predicted,
            gold,
        }
    }
}

/// Set precision, recall and F1 of predicted links against gold links.
/// Empty denominators give 0.
pub fn alignment_f1(predicted: &Alignment, gold: &Alignment) -> AlignmentScore {
    let matched = predicted.links.intersection(&gold.links).count();
    AlignmentScore::from_counts(matched, predicted.len(), gold.len())
}

/// Micro-averaged scores over a whole corpus.
pub fn corpus_alignment_f1(predicted: &[Alignment], gold: &[Alignment]) -> Result<AlignmentScore> {
    if predicted.len() != gold.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: gold.len(),
        });
    }
    let (mut matched, mut pred, mut gld) = (0, 0, 0);
    for (p, g) in predicted.iter().zip(gold) {
        let s = alignment_f1(p, g);
        matched += s.matched;
        pred += s.predicted;
        gld += s.gold;
    }
    Ok(AlignmentScore::from_counts(matched, pred, gld))
}

pub fn format_alignments(alignments: &[Alignment]) -> String {
    alignments.iter().map(|a| format!("{a}\n")).collect()
}

pub fn read_alignments(path: impl AsRef<Path>) -> Result<Vec<Alignment>> {
    let path = path.as_ref();
    read_utf8(path)?
        .lines()
        .enumerate()
        .map(|(i, line)| {
            line.parse().map_err(|reason| Error::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                reason,
            })
        })
        .collect()
}

pub fn write_alignments(alignments: &[Alignment], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_alignments(alignments)).map_err(|e| Error::io(path, e))
}

/// Convenience for tests and fixtures: sentence from space-separated words.
pub fn sentence(text: &str) -> Sentence {
    text.split_whitespace().map(str::to_owned).collect()
}
