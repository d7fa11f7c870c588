//! `morphsplit` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage errors (bad flags, bad config
//! values), 1 for I/O and runtime failures.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use morphsplit_core::aligner::{align_corpus, corpus_alignment_f1, format_alignments, read_alignments, train_em};
use morphsplit_core::compound::{induce_compound_suffixes, save_compound_suffixes, DEFAULT_MARGIN};
use morphsplit_core::metrics::evaluate;
use morphsplit_core::{
    build_vocabulary, load_compound_suffixes, load_suffix_list, preprocess, read_token_corpus, Marker, Mode,
    PipelineConfig,
};

#[derive(Parser, Debug)]
#[command(name = "morphsplit", version, about = "Morphological preprocessing and MT evaluation")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// key=value file overriding built-in defaults; explicit flags still win
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for per-sentence parallelism (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Induce a compound-suffix list from a monolingual corpus
    InduceSuffixes(InduceArgs),
    /// Segment a corpus with suffix separation and/or compound splitting
    Preprocess(PreprocessArgs),
    /// Score a system output against a reference with BLEU, NIST and TER
    Evaluate(EvaluateArgs),
    /// Train a Model 1 aligner and print Viterbi links
    Align(AlignArgs),
    /// Before/after alignment comparison on the bundled example sentence
    DemoTable2,
}

#[derive(Args, Debug)]
struct InduceArgs {
    #[arg(long, value_name = "FILE")]
    mono: PathBuf,
    #[arg(long)]
    margin: Option<usize>,
    /// Keep suffixes seen trailing at least this many words
    #[arg(long)]
    min_count: Option<u64>,
    #[arg(short, long, value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args, Debug)]
struct PreprocessArgs {
    /// bl, ss, cs or cs+ss
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, value_name = "FILE")]
    suffixes: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    compounds: Option<PathBuf>,
    /// Appended to every non-final piece of a split word
    #[arg(long)]
    marker: Option<String>,
    /// POS tags parallel to the input; NNP tokens are left whole
    #[arg(long, value_name = "FILE")]
    pos_tags: Option<PathBuf>,
    #[arg(long)]
    margin: Option<usize>,
    #[arg(short, long, value_name = "FILE")]
    input: PathBuf,
    #[arg(short, long, value_name = "FILE")]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Tsv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long, value_name = "FILE")]
    hyp: PathBuf,
    #[arg(long = "ref", value_name = "FILE")]
    reference: PathBuf,
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
}

#[derive(Args, Debug)]
struct AlignArgs {
    #[arg(long, value_name = "FILE")]
    src: PathBuf,
    #[arg(long, value_name = "FILE")]
    tgt: PathBuf,
    /// EM iterations
    #[arg(long)]
    iters: Option<usize>,
    /// Gold links in i-j format; prints precision, recall and F1 to stderr
    #[arg(long, value_name = "FILE")]
    gold: Option<PathBuf>,
    /// Let target words align to an empty source word
    #[arg(long)]
    null: bool,
    /// Write links here instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

/// Bad flags or configuration; reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

const CONFIG_KEYS: &[&str] = &[
    "mode", "suffixes", "compounds", "marker", "pos_tags", "margin", "min_count", "iters", "null", "report", "threads",
];

/// Defaults read from a `key=value` file. Blank lines and `#` comments are skipped.
#[derive(Debug, Default)]
struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    fn parse(text: &str) -> std::result::Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
            let key = key.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key {key:?}", i + 1));
            }
            values.insert(key, value.trim().to_owned());
        }
        Ok(FileConfig { values })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| usage(format!("config key {key}: invalid value {v:?}: {e}")))
            })
            .transpose()
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help/--version
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(threads) = cli.threads.or(config.get("threads")?) {
        if threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }
    match cli.command {
        Command::InduceSuffixes(args) => induce(args, &config),
        Command::Preprocess(args) => run_preprocess(args, &config),
        Command::Evaluate(args) => run_evaluate(args, &config),
        Command::Align(args) => run_align(args, &config),
        Command::DemoTable2 => {
            let demo = morphsplit_core::demo::run_table2()?;
            print!("{demo}");
            Ok(())
        }
    }
}

/// Refuses to overwrite any of `inputs` with `output`.
fn check_output(output: &Path, inputs: &[&Path]) -> Result<()> {
    let Ok(out) = output.canonicalize() else {
        return Ok(());
    };
    for input in inputs {
        if input.canonicalize().is_ok_and(|i| i == out) {
            return Err(usage(format!(
                "output {} would overwrite input {}",
                output.display(),
                input.display()
            )));
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn induce(args: InduceArgs, config: &FileConfig) -> Result<()> {
    let margin = args.margin.or(config.get("margin")?).unwrap_or(DEFAULT_MARGIN);
    let min_count = args.min_count.or(config.get("min_count")?).unwrap_or(1);
    check_output(&args.output, &[&args.mono])?;

    let corpus = read_token_corpus(&args.mono)?;
    let vocab = build_vocabulary(&corpus);
    let set = induce_compound_suffixes(&vocab, margin).with_min_count(min_count);
    info!("{} vocabulary words, {} compound suffixes", vocab.len(), set.len());
    save_compound_suffixes(&set, &args.output)?;
    Ok(())
}

fn run_preprocess(args: PreprocessArgs, config: &FileConfig) -> Result<()> {
    let mode: Mode = match args.mode.or(config.get("mode")?) {
        Some(m) => m.parse().map_err(|e| usage(format!("--mode: {e}")))?,
        None => return Err(usage("--mode is required (bl, ss, cs or cs+ss)")),
    };
    let suffixes = args.suffixes.or(config.get("suffixes")?);
    let compounds = args.compounds.or(config.get("compounds")?);
    let pos_tags = args.pos_tags.or(config.get("pos_tags")?);
    let margin = args.margin.or(config.get("margin")?).unwrap_or(DEFAULT_MARGIN);
    let marker = match args.marker.or(config.get("marker")?) {
        Some(m) => Some(Marker::new(m).map_err(|e| usage(format!("--marker: {e}")))?),
        None => None,
    };
    let mut inputs: Vec<&Path> = vec![&args.input];
    inputs.extend(suffixes.as_deref());
    inputs.extend(compounds.as_deref());
    inputs.extend(pos_tags.as_deref());
    check_output(&args.output, &inputs)?;

    let mut pipeline = PipelineConfig::new(mode).with_margin(margin);
    if mode.uses_suffixes() {
        let path = suffixes.ok_or_else(|| usage(format!("--suffixes is required for mode {}", mode.name())))?;
        pipeline = pipeline.with_suffixes(load_suffix_list(path)?);
    }
    if mode.uses_compounds() {
        let path = compounds.ok_or_else(|| usage(format!("--compounds is required for mode {}", mode.name())))?;
        pipeline = pipeline.with_compounds(load_compound_suffixes(path)?);
    }
    if let Some(marker) = marker {
        pipeline = pipeline.with_marker(marker);
    }
    if let Some(path) = pos_tags {
        pipeline = pipeline.with_nnp_tags(read_token_corpus(path)?);
    }

    let corpus = read_token_corpus(&args.input)?;
    let output = preprocess(&corpus, &pipeline)?;
    if mode == Mode::Baseline {
        // Identity mode: copy the validated bytes so spacing and line endings survive.
        let raw = fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
        write_file(&args.output, raw)
    } else {
        write_file(&args.output, output.to_text())
    }
}

fn run_evaluate(args: EvaluateArgs, config: &FileConfig) -> Result<()> {
    let format = args.report.or(config.get("report")?).unwrap_or(ReportFormat::Tsv);
    let hyps = read_token_corpus(&args.hyp)?;
    let refs = read_token_corpus(&args.reference)?;
    let report = evaluate(&hyps, &refs)?;
    let mut out = std::io::stdout().lock();
    match format {
        ReportFormat::Tsv => {
            writeln!(out, "{}", morphsplit_core::metrics::EvalReport::TSV_HEADER)?;
            writeln!(out, "{}", report.tsv_row())?;
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn run_align(args: AlignArgs, config: &FileConfig) -> Result<()> {
    let iterations = args.iters.or(config.get("iters")?).unwrap_or(5);
    if iterations == 0 {
        return Err(usage("--iters must be at least 1"));
    }
    let null_word = args.null || config.get("null")?.unwrap_or(false);
    if let Some(output) = &args.output {
        let mut inputs: Vec<&Path> = vec![&args.src, &args.tgt];
        inputs.extend(args.gold.as_deref());
        check_output(output, &inputs)?;
    }

    let source = read_token_corpus(&args.src)?;
    let target = read_token_corpus(&args.tgt)?;
    let gold = args.gold.as_deref().map(read_alignments).transpose()?;
    let table = train_em(&source, &target, iterations, null_word)?;
    let links = align_corpus(&source, &target, &table)?;
    let score = gold.map(|g| corpus_alignment_f1(&links, &g)).transpose()?;

    let text = format_alignments(&links);
    match &args.output {
        Some(path) => write_file(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    if let Some(s) = score {
        eprintln!(
            "precision {:.4}\trecall {:.4}\tF1 {:.4}",
            s.precision, s.recall, s.f1
        );
    }
    Ok(())
}
