//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p morphsplit-core --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use morphsplit_core::aligner::{align_corpus, corpus_alignment_f1, train_em, Alignment, EmTrainer};
use morphsplit_core::compound::{induce_compound_suffixes, split_compound, CompoundSuffixSet};
use morphsplit_core::corpus::{build_vocabulary, TokenCorpus};
use morphsplit_core::demo::run_table2;
use morphsplit_core::metrics::{bleu, edit_distance, sentence_ter, ter, wer};
use morphsplit_core::pipeline::{preprocess, reconstruct, Mode, PipelineConfig};
use morphsplit_core::suffix::{separate_suffix, SuffixList};
use morphsplit_core::synth::{self, SynthConfig};
use morphsplit_core::Marker;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn verdict(id: u32, name: &str, ok: bool, detail: impl AsRef<str>) {
    println!(
        "[{}] criterion {id}: {name} ({})",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    assert!(ok, "criterion {id} failed: {}", detail.as_ref());
}

const TABLE2_SRC_PRIME: &str = "dara sahaa mahiny aaMnii daMta tajGYaaM kaDuuna tapaasuuna ghyaa";

#[test]
fn criterion_1_example_sentence_segmentation() {
    let start = Instant::now();
    let demo = run_table2().expect("demo runs");
    let rendered = demo.to_string();
    let elapsed = start.elapsed();
    let src_prime = rendered
        .lines()
        .find_map(|l| l.strip_prefix("SRC'\t"))
        .unwrap_or_default();
    let src = rendered.lines().find_map(|l| l.strip_prefix("SRC\t")).unwrap_or_default();
    let ok = src_prime == TABLE2_SRC_PRIME
        && demo.preprocessed.len() == 9
        && src == synth::TABLE2_SOURCE
        && elapsed < Duration::from_secs(1);
    verdict(1, "demo-table2 SRC' row", ok, format!("{src_prime:?} in {elapsed:?}"));
}

#[test]
fn criterion_2_worked_example_splits() {
    let ss = SuffixList::new(["aaMnii"]).unwrap();
    let s1 = separate_suffix("mahinyaaMnii", &ss).unwrap();

    let cs = CompoundSuffixSet::from_counts([("kaDuuna", 1), ("tajGYaaM", 1)]).unwrap();
    let s2 = split_compound("daMtatajGYaaMkaDuuna", &cs, 5);

    // "tiila" absent, so "iila" is the best-ranked match: the documented bad split.
    let bad_list = SuffixList::new(["iila", "vara"]).unwrap();
    let s3 = separate_suffix("jarmaniitiila", &bad_list).unwrap();

    let ok = (s1.stem, s1.suffix) == ("mahiny", Some("aaMnii"))
        && s2 == ["daMta", "tajGYaaM", "kaDuuna"]
        && (s3.stem, s3.suffix) == ("jarmaniit", Some("iila"));
    verdict(
        2,
        "worked-example splits",
        ok,
        format!("{:?}+{:?}; {:?}; {:?}+{:?}", s1.stem, s1.suffix, s2, s3.stem, s3.suffix),
    );
}

#[test]
fn criterion_3_concatenation_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    let cases = 10_000;
    for _ in 0..cases {
        let word = random_word(&mut rng, 1, 14);
        let suffixes: Vec<String> = (0..rng.gen_range(1..8)).map(|_| random_word(&mut rng, 1, 6)).collect();
        let list = SuffixList::new(suffixes.clone()).unwrap();
        let set = CompoundSuffixSet::from_counts(suffixes.iter().map(|s| (s.clone(), 1))).unwrap();
        let margin = rng.gen_range(0..6);

        let split = separate_suffix(&word, &list).unwrap();
        let ss_joined = format!("{}{}", split.stem, split.suffix.unwrap_or(""));
        let cs_joined: String = split_compound(&word, &set, margin).concat();
        let config = PipelineConfig::new(Mode::CompoundThenSuffix)
            .with_suffixes(list)
            .with_compounds(set)
            .with_margin(margin);
        let both: String = config.segment(&word).concat();
        if ss_joined != word || cs_joined != word || both != word || split.stem.is_empty() {
            failures += 1;
        }
    }
    verdict(3, "concatenation identity", failures == 0, format!("{cases} words, {failures} failures"));
}

#[test]
fn criterion_4_induction_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut discrepancies = 0;
    let mut members = 0;
    let vocabularies = 40;
    for k in 0..vocabularies {
        let size = if k == 0 { 500 } else { rng.gen_range(1..=500) };
        let corpus = random_compounding_corpus(&mut rng, size);
        let vocab = build_vocabulary(&corpus);
        assert!(vocab.len() <= 500);
        let induced = induce_compound_suffixes(&vocab, 5);
        let oracle = induction_oracle(&vocab.words().collect::<Vec<_>>(), 5);
        let got: Vec<(String, u64)> = induced.iter().map(|(s, c)| (s.to_owned(), c)).collect();
        if got != oracle {
            discrepancies += 1;
        }
        members += got.len();
    }
    let elapsed = start.elapsed();
    verdict(
        4,
        "compound-suffix induction oracle",
        discrepancies == 0 && elapsed < Duration::from_secs(10),
        format!("{vocabularies} vocabularies, {members} members, {discrepancies} discrepancies, {elapsed:?}"),
    );
}

#[test]
fn criterion_5_metric_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let mut bleu_max_err = 0.0f64;
    for _ in 0..100 {
        let (h, r) = random_parallel(&mut rng, 1, 4, 0, 7, &["a", "b", "c", "d", "e"]);
        if h.token_count() == 0 {
            continue;
        }
        let got = bleu(&h, &r, 4).unwrap().score;
        let want = bleu_oracle(&h, &r, 4);
        bleu_max_err = bleu_max_err.max((got - want).abs());
    }

    let mut ter_cases = 0;
    let mut ter_mismatch = Vec::new();
    let mut dominance_violations = 0;
    while ter_cases < 3000 {
        let hyp = random_sentence(&mut rng, 0, 6, &["a", "b", "c", "d"]);
        let reference = random_sentence(&mut rng, 1, 6, &["a", "b", "c", "d"]);
        let got = sentence_ter(&hyp, &reference).total_edits();
        let want = ter_oracle(&hyp, &reference);
        if got != want {
            ter_mismatch.push(format!("{hyp:?}/{reference:?}: {got} vs {want}"));
        }
        if got > edit_distance(&hyp, &reference) {
            dominance_violations += 1;
        }
        ter_cases += 1;
    }
    for _ in 0..100 {
        let (h, r) = random_parallel(&mut rng, 1, 5, 0, 12, &["a", "b", "c", "d", "e", "f"]);
        if ter(&h, &r).unwrap().score > wer(&h, &r).unwrap() + 1e-12 {
            dominance_violations += 1;
        }
    }

    let mut identity_ok = true;
    for _ in 0..50 {
        let (_, r) = random_parallel(&mut rng, 1, 5, 1, 9, &["a", "b", "c", "d", "e"]);
        identity_ok &= bleu(&r, &r, 4).unwrap().score == 1.0 && ter(&r, &r).unwrap().score == 0.0;
    }

    let ok = bleu_max_err <= 1e-9 && ter_mismatch.is_empty() && dominance_violations == 0 && identity_ok;
    verdict(
        5,
        "metric oracles",
        ok,
        format!(
            "BLEU max |err| {bleu_max_err:.2e}; TER {} cases, {} mismatches {:?}; TER>WER {dominance_violations}; identity {identity_ok}",
            ter_cases,
            ter_mismatch.len(),
            ter_mismatch.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_6_em_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ll_violations = 0;
    let mut worst_row_err = 0.0f64;
    for k in 0..50 {
        let (src, tgt) = random_parallel(&mut rng, 2, 12, 1, 7, &["a", "b", "c", "d", "e", "f", "g"]);
        let mut trainer = EmTrainer::new(&src, &tgt, k % 2 == 1).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for _ in 0..10 {
            let ll = trainer.step();
            if ll < prev - 1e-9 {
                ll_violations += 1;
            }
            prev = ll;
            for s in trainer.table().row_sums() {
                worst_row_err = worst_row_err.max((s - 1.0).abs());
            }
        }
        if trainer.log_likelihood() < prev - 1e-9 {
            ll_violations += 1;
        }
    }
    verdict(
        6,
        "EM monotonicity",
        ll_violations == 0 && worst_row_err <= 1e-9,
        format!("50 corpora x 10 iterations; {ll_violations} decreases; max |row sum - 1| {worst_row_err:.2e}"),
    );
}

#[test]
fn criterion_7_alignment_improvement() {
    let start = Instant::now();
    let corpus = synth::generate(&SynthConfig::default());
    assert!(corpus.source.len() >= 200);
    let iterations = 5;

    let table = train_em(&corpus.source, &corpus.target, iterations, false).unwrap();
    let baseline = align_corpus(&corpus.source, &corpus.target, &table).unwrap();
    let base = corpus_alignment_f1(&baseline, &corpus.gold).unwrap();

    let config = PipelineConfig::new(Mode::CompoundThenSuffix)
        .with_suffixes(corpus.suffixes.clone())
        .with_compounds(corpus.compounds.clone());
    let (split_src, origins) = config.preprocess_with_origins(&corpus.source).unwrap();
    let table = train_em(&split_src, &corpus.target, iterations, false).unwrap();
    let projected: Vec<Alignment> = align_corpus(&split_src, &corpus.target, &table)
        .unwrap()
        .iter()
        .zip(&origins)
        .map(|(a, o)| a.project_source(o))
        .collect();
    let split = corpus_alignment_f1(&projected, &corpus.gold).unwrap();
    let elapsed = start.elapsed();

    let gain = (split.f1 - base.f1) * 100.0;
    verdict(
        7,
        "alignment improvement",
        gain >= 5.0 && elapsed < Duration::from_secs(30),
        format!(
            "{} pairs; F1 BL {:.2} -> BL+CS+SS {:.2} (+{gain:.2}); {elapsed:?}",
            corpus.source.len(),
            base.f1 * 100.0,
            split.f1 * 100.0
        ),
    );
}

#[test]
fn criterion_8_marker_round_trip() {
    let marker = Marker::new("@@").unwrap();
    let mut failures = 0;
    let mut checked = 0;

    let fixture = TokenCorpus::parse(synth::TABLE2_SOURCE);
    let synthetic = synth::generate(&SynthConfig::default());
    let table2_config = |mode| {
        PipelineConfig::new(mode)
            .with_suffixes(SuffixList::new(["aaMnii"]).unwrap())
            .with_compounds(CompoundSuffixSet::from_counts([("kaDuuna", 1), ("tajGYaaM", 1)]).unwrap())
            .with_marker(marker.clone())
    };
    let synth_config = |mode| {
        PipelineConfig::new(mode)
            .with_suffixes(synthetic.suffixes.clone())
            .with_compounds(synthetic.compounds.clone())
            .with_marker(marker.clone())
    };
    for mode in Mode::ALL {
        for (corpus, config) in [(&fixture, table2_config(mode)), (&synthetic.source, synth_config(mode))] {
            let out = preprocess(corpus, &config).unwrap();
            checked += 1;
            if reconstruct(&out, &marker).unwrap().to_text() != corpus.to_text() {
                failures += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let corpus = random_word_corpus(&mut rng, 8, 8);
        let suffixes: Vec<String> = (0..5).map(|_| random_word(&mut rng, 1, 4)).collect();
        let config = PipelineConfig::new(Mode::ALL[rng.gen_range(0..4)])
            .with_suffixes(SuffixList::new(suffixes.clone()).unwrap())
            .with_compounds(CompoundSuffixSet::from_counts(suffixes.into_iter().map(|s| (s, 1))).unwrap())
            .with_margin(rng.gen_range(0..4))
            .with_marker(marker.clone());
        let out = preprocess(&corpus, &config).unwrap();
        checked += 1;
        if reconstruct(&out, &marker).unwrap().to_text() != corpus.to_text() {
            failures += 1;
        }
    }
    verdict(
        8,
        "marker round trip",
        failures == 0,
        format!("{checked} corpora, {failures} failures"),
    );
}
