//! Deterministic synthetic parallel corpus with agglutinative source words.
//!
//! Source words are built by gluing noun stems to case suffixes and by
//! compounding stems with head words; each piece has exactly one target
//! word, so word-level gold links are known. The lexicon includes the
//! Marathi-Hindi sentence used by the `demo-table2` command, and that
//! sentence pair is always the first pair of the corpus.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aligner::Alignment;
use crate::compound::CompoundSuffixSet;
use crate::corpus::{Sentence, TokenCorpus};
use crate::suffix::SuffixList;

pub const TABLE2_SOURCE: &str = "dara sahaa mahinyaaMnii daMtatajGYaaMkaDuuna tapaasuuna ghyaa";
pub const TABLE2_TARGET: &str = "hara Chaha mahiine meM danta visheShaGYa se chekaapa karaaeM";
/// Source word index for each target word of the sentence above.
const TABLE2_GOLD: [usize; 9] = [0, 1, 2, 2, 3, 3, 3, 4, 5];

/// Case suffix and the postposition it corresponds to.
const CASE_SUFFIXES: &[(&str, &str)] = &[
    ("aaMnii", "meM"),
    ("laa", "ko"),
    ("caa", "kaa"),
    ("vara", "para"),
    ("saaThii", "liye"),
    ("paryaMta", "taka"),
    ("madhye", "biica"),
];

/// Words that occur as the final member of compounds.
const COMPOUND_HEADS: &[(&str, &str)] = &[
    ("tajGYaaM", "visheShaGYa"),
    ("kaDuuna", "se"),
    ("gharaata", "makaana"),
    ("mitra", "dosta"),
    ("kaamagaara", "mazaduura"),
    ("shaastra", "vidyaa"),
];

const PLAIN_WORDS: &[(&str, &str)] = &[
    ("dara", "hara"),
    ("sahaa", "Chaha"),
    ("tapaasuuna", "chekaapa"),
    ("ghyaa", "karaaeM"),
    ("aahe", "hai"),
    ("naahii", "nahiiM"),
    ("aaNi", "aura"),
];

const FIXED_STEMS: &[(&str, &str)] = &[("mahiny", "mahiine"), ("daMta", "danta")];

const CONSONANTS: &[&str] = &[
    "k", "kh", "g", "c", "j", "T", "D", "t", "th", "d", "n", "p", "b", "m", "y", "r", "l", "v", "sh", "s", "h",
];
const VOWELS: &[&str] = &["a", "aa", "i", "ii", "u", "uu", "e", "o"];

#[derive(Clone, Copy, Debug)]
pub struct SynthConfig {
    pub sentence_pairs: usize,
    /// Generated noun stems in addition to the fixed ones.
    pub stems: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            sentence_pairs: 300,
            stems: 60,
            seed: 2014,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticCorpus {
    pub source: TokenCorpus,
    pub target: TokenCorpus,
    /// Word-level gold links, one alignment per pair.
    pub gold: Vec<Alignment>,
    /// Case suffixes used in generation.
    pub suffixes: SuffixList,
    /// Compound heads used in generation.
    pub compounds: CompoundSuffixSet,
}

fn syllables(rng: &mut ChaCha8Rng, count: usize) -> String {
    (0..count)
        .map(|_| format!("{}{}", CONSONANTS.choose(rng).unwrap(), VOWELS.choose(rng).unwrap()))
        .collect()
}

/// Random stem of 6 to 10 code points that no listed suffix or head can
/// strip and that is not already in use.
fn fresh_stem(rng: &mut ChaCha8Rng, taken: &mut HashSet<String>) -> String {
    loop {
        let n = rng.gen_range(3..=4);
        let stem = syllables(rng, n);
        let len = stem.chars().count();
        let clashes = CASE_SUFFIXES
            .iter()
            .chain(COMPOUND_HEADS)
            .any(|(s, _)| stem.ends_with(s));
        if (6..=10).contains(&len) && !clashes && taken.insert(stem.clone()) {
            return stem;
        }
    }
}

fn fresh_target(rng: &mut ChaCha8Rng, taken: &mut HashSet<String>) -> String {
    loop {
        let n = rng.gen_range(2..=3);
        let word = format!("{}H", syllables(rng, n));
        if taken.insert(word.clone()) {
            return word;
        }
    }
}

pub fn generate(config: &SynthConfig) -> SyntheticCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut taken_src: HashSet<String> = FIXED_STEMS
        .iter()
        .chain(PLAIN_WORDS)
        .chain(COMPOUND_HEADS)
        .map(|(s, _)| s.to_string())
        .collect();
    let mut taken_tgt: HashSet<String> = FIXED_STEMS
        .iter()
        .chain(PLAIN_WORDS)
        .chain(COMPOUND_HEADS)
        .chain(CASE_SUFFIXES)
        .map(|(_, t)| t.to_string())
        .collect();

    let mut stems: Vec<(String, String)> = FIXED_STEMS
        .iter()
        .map(|(s, t)| (s.to_string(), t.to_string()))
        .collect();
    for _ in 0..config.stems {
        let s = fresh_stem(&mut rng, &mut taken_src);
        let t = fresh_target(&mut rng, &mut taken_tgt);
        stems.push((s, t));
    }

    let mut source = Vec::with_capacity(config.sentence_pairs);
    let mut target = Vec::with_capacity(config.sentence_pairs);
    let mut gold = Vec::with_capacity(config.sentence_pairs);

    if config.sentence_pairs > 0 {
        source.push(crate::aligner::sentence(TABLE2_SOURCE));
        target.push(crate::aligner::sentence(TABLE2_TARGET));
        gold.push(TABLE2_GOLD.iter().enumerate().map(|(j, &i)| (i, j)).collect());
    }

    let standalone: Vec<&(&str, &str)> = PLAIN_WORDS.iter().chain(COMPOUND_HEADS).collect();
    while source.len() < config.sentence_pairs {
        let words = rng.gen_range(3..=8);
        let mut src: Sentence = Vec::with_capacity(words);
        let mut tgt: Sentence = Vec::new();
        let mut links = Alignment::new();
        for i in 0..words {
            let roll: f64 = rng.gen();
            let mut emit = |word: String, translations: &[&str], tgt: &mut Sentence| {
                for t in translations {
                    links.insert(i, tgt.len());
                    tgt.push(t.to_string());
                }
                word
            };
            let word = if roll < 0.40 {
                let (stem, tr) = stems.choose(&mut rng).unwrap();
                let (suf, post) = CASE_SUFFIXES.choose(&mut rng).unwrap();
                emit(format!("{stem}{suf}"), &[tr, post], &mut tgt)
            } else if roll < 0.60 {
                // modifiers need 6+ code points to clear the splitting margin
                let (stem, tr) = stems[FIXED_STEMS.len()..].choose(&mut rng).unwrap();
                let (head, htr) = COMPOUND_HEADS.choose(&mut rng).unwrap();
                emit(format!("{stem}{head}"), &[tr, htr], &mut tgt)
            } else if roll < 0.80 {
                let (stem, tr) = stems.choose(&mut rng).unwrap();
                emit(stem.clone(), &[tr], &mut tgt)
            } else {
                let (w, tr) = *standalone.choose(&mut rng).unwrap();
                emit(w.to_string(), &[tr], &mut tgt)
            };
            src.push(word);
        }
        source.push(src);
        target.push(tgt);
        gold.push(links);
    }

    SyntheticCorpus {
        source: TokenCorpus::from_valid(source),
        target: TokenCorpus::from_valid(target),
        gold,
        suffixes: SuffixList::new(CASE_SUFFIXES.iter().map(|(s, _)| *s)).expect("valid suffixes"),
        compounds: CompoundSuffixSet::from_counts(COMPOUND_HEADS.iter().map(|(s, _)| (*s, 1)))
            .expect("valid heads"),
    }
}
