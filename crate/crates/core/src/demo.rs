//! Before/after alignment comparison on the Marathi example sentence.

use std::fmt;

use crate::aligner::{align_corpus, corpus_alignment_f1, train_em, Alignment, AlignmentScore};
use crate::compound::parse_compound_suffixes;
use crate::corpus::{Sentence, TokenCorpus};
use crate::error::{Error, Result};
use crate::pipeline::{preprocess, Mode, PipelineConfig};
use crate::suffix::parse_suffix_list;
use crate::synth::{self, SynthConfig, TABLE2_SOURCE};

pub const FIXTURE_SUFFIXES: &str = include_str!("../fixtures/table2_suffixes.txt");
pub const FIXTURE_COMPOUNDS: &str = include_str!("../fixtures/table2_compounds.tsv");

pub const DEMO_ITERATIONS: usize = 5;

#[derive(Clone, Debug)]
pub struct Table2Demo {
    pub source: Sentence,
    pub preprocessed: Sentence,
    pub target: Sentence,
    /// Links of the example pair under the baseline model.
    pub baseline_links: Alignment,
    /// Links of the example pair under the segmented model, on segmented tokens.
    pub split_links: Alignment,
    /// Word-level scores over the whole synthetic corpus.
    pub baseline_score: AlignmentScore,
    pub split_score: AlignmentScore,
    pub sentence_pairs: usize,
}

fn fixture_config() -> Result<PipelineConfig> {
    let suffixes = parse_suffix_list(FIXTURE_SUFFIXES)?;
    let compounds = parse_compound_suffixes(FIXTURE_COMPOUNDS).map_err(|(line, reason)| Error::Malformed {
        path: "fixtures/table2_compounds.tsv".into(),
        line,
        reason,
    })?;
    Ok(PipelineConfig::new(Mode::CompoundThenSuffix)
        .with_suffixes(suffixes)
        .with_compounds(compounds))
}

/// Segments the example sentence with the bundled lists, then trains the
/// aligner on the synthetic corpus with and without segmentation.
pub fn run_table2() -> Result<Table2Demo> {
    let example = TokenCorpus::parse(TABLE2_SOURCE);
    let preprocessed = preprocess(&example, &fixture_config()?)?;

    let corpus = synth::generate(&SynthConfig::default());
    let baseline_table = train_em(&corpus.source, &corpus.target, DEMO_ITERATIONS, false)?;
    let baseline = align_corpus(&corpus.source, &corpus.target, &baseline_table)?;

    let config = PipelineConfig::new(Mode::CompoundThenSuffix)
        .with_suffixes(corpus.suffixes.clone())
        .with_compounds(corpus.compounds.clone());
    let (split_source, origins) = config.preprocess_with_origins(&corpus.source)?;
    let split_table = train_em(&split_source, &corpus.target, DEMO_ITERATIONS, false)?;
    let split = align_corpus(&split_source, &corpus.target, &split_table)?;
    let projected: Vec<Alignment> = split
        .iter()
        .zip(&origins)
        .map(|(a, o)| a.project_source(o))
        .collect();

    Ok(Table2Demo {
        source: example.sentences()[0].clone(),
        preprocessed: preprocessed.sentences()[0].clone(),
        target: corpus.target.sentences()[0].clone(),
        baseline_links: baseline[0].clone(),
        split_links: split[0].clone(),
        baseline_score: corpus_alignment_f1(&baseline, &corpus.gold)?,
        split_score: corpus_alignment_f1(&projected, &corpus.gold)?,
        sentence_pairs: corpus.source.len(),
    })
}

/// Target words linked to each source token, `-` when none.
fn aligned_row(source_len: usize, target: &[String], links: &Alignment) -> String {
    (0..source_len)
        .map(|i| {
            let words: Vec<&str> = links
                .links()
                .filter(|&(s, _)| s == i)
                .map(|(_, t)| target[t].as_str())
                .collect();
            if words.is_empty() {
                "-".to_owned()
            } else {
                words.join(" ")
            }
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

impl fmt::Display for Table2Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SRC\t{}", self.source.join(" "))?;
        writeln!(f, "SRC'\t{}", self.preprocessed.join(" "))?;
        writeln!(f, "TGT\t{}", self.target.join(" "))?;
        writeln!(
            f,
            "BL aligned\t{}",
            aligned_row(self.source.len(), &self.target, &self.baseline_links)
        )?;
        writeln!(
            f,
            "BL+CS+SS aligned\t{}",
            aligned_row(self.preprocessed.len(), &self.target, &self.split_links)
        )?;
        writeln!(
            f,
            "links\tBL {} ({} one-to-one)\tBL+CS+SS {} ({} one-to-one)",
            self.baseline_links.len(),
            self.baseline_links.one_to_one_links(),
            self.split_links.len(),
            self.split_links.one_to_one_links()
        )?;
        writeln!(
            f,
            "corpus F1 ({} pairs, {} EM iterations)\tBL {:.2}\tBL+CS+SS {:.2}",
            self.sentence_pairs,
            DEMO_ITERATIONS,
            self.baseline_score.f1 * 100.0,
            self.split_score.f1 * 100.0
        )
    }
}
