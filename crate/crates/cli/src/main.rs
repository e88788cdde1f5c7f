//! `wsd`: train and apply decision lists for word sense disambiguation and
//! run the evaluation protocols, one subcommand each.
//!
//! Every subcommand is deterministic given its flags, inputs, and `--seed`
//! (default 0), and echoes its resolved configuration as `#` comment lines
//! at the top of its output (on stderr for the commands whose output is a
//! data file). Exit codes: 0 success, 2 usage error, 3 data error.

mod output;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{num, num2, write_text, Output};
use wsd_core::corpus::{Corpus, SenseInventory, SenseMapping, Word};
use wsd_core::declist::{DecisionList, Outcome};
use wsd_core::eval::{
    all_words_eval, cross_corpus_eval, cross_validate, cross_validate_coarse, learning_curve,
    mfs_cross_validate, noisy_cross_validate, random_baseline, word_report, CurveSpec,
    EvalReport, FoldPlan, NoiseSpec,
};
use wsd_core::features::{
    enumerate_occurrences, enumerate_targets, extract, FeatureConfig,
};
use wsd_core::webacq::{acquire_corpus, AcquireOptions, DirStore};

#[derive(Parser)]
#[command(name = "wsd", version, about = "Decision-list word sense disambiguation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a decision list for one word and write it as a `.dl` file.
    Train(TrainArgs),
    /// Apply a stored decision list to every occurrence of its word.
    Tag(TagArgs),
    /// Train on one corpus and score against another (same inventory).
    Eval(EvalArgs),
    /// k-fold cross-validation for one word.
    Xval(XvalArgs),
    /// Learning curve over training-set fractions.
    Curve(CurveArgs),
    /// Cross-validation with noisy training labels, one row per fraction.
    Noise(NoiseArgs),
    /// Fine- vs coarse-grained (semantic file) cross-validation.
    Coarse(CoarseArgs),
    /// Hold out whole documents and disambiguate all their content words.
    Allwords(AllwordsArgs),
    /// Train on one corpus, map senses, score against another corpus.
    Cross(CrossArgs),
    /// Per-word report: baselines and cross-validated decision lists.
    Report(ReportArgs),
    /// Acquire a training corpus from a local document store.
    Acquire(AcquireArgs),
    /// Random or most-frequent-sense baseline.
    Baseline(BaselineArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// RNG seed for every randomized step.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Target word as `lemma.pos` (e.g. `interest.noun`).
    #[arg(long, required = true)]
    word: Word,
    /// Feature preset (`basic`, `local`, `topical`, `all`) or a config file.
    #[arg(long, default_value = "basic")]
    features: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TagArgs {
    /// A `.dl` file produced by `wsd train`.
    #[arg(long, required = true)]
    list: PathBuf,
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Cross-check: must match the word named in the list header.
    #[arg(long)]
    word: Option<Word>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Given twice: training corpus, then test corpus.
    #[arg(long, required = true)]
    corpus: Vec<PathBuf>,
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Words to evaluate; defaults to every word tagged in both corpora.
    #[arg(long)]
    word: Vec<Word>,
    #[arg(long, default_value = "basic")]
    features: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct XvalArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    #[arg(long, required = true)]
    word: Word,
    #[arg(long, default_value = "basic")]
    features: String,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    #[arg(long, required = true)]
    word: Word,
    #[arg(long, default_value = "basic")]
    features: String,
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Training fractions, ascending; defaults to .10 .25 .50 .75 1.0.
    #[arg(long = "fraction")]
    fractions: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    rounds: u32,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct NoiseArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    #[arg(long, required = true)]
    word: Word,
    #[arg(long, default_value = "basic")]
    features: String,
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Noise fractions; defaults to 0 .1 .2 .3 .4.
    #[arg(long = "fraction")]
    fractions: Vec<f64>,
    /// Draw replacement tags from the wrong senses only.
    #[arg(long)]
    force_different: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CoarseArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    #[arg(long, required = true)]
    word: Word,
    #[arg(long, default_value = "basic")]
    features: String,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct AllwordsArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Held-out document ids; training uses the rest of the corpus.
    #[arg(long = "holdout", required = true)]
    holdouts: Vec<String>,
    #[arg(long, default_value = "basic")]
    features: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CrossArgs {
    /// Given twice: training corpus, then test corpus.
    #[arg(long, required = true)]
    corpus: Vec<PathBuf>,
    /// Given once (shared) or twice: training inventory, test inventory.
    #[arg(long, required = true)]
    inventory: Vec<PathBuf>,
    /// Sense mapping from training-inventory ids to test-inventory ids.
    #[arg(long, required = true)]
    mapping: PathBuf,
    /// Words to evaluate; defaults to every word tagged in both corpora.
    #[arg(long)]
    word: Vec<Word>,
    #[arg(long, default_value = "basic")]
    features: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Words to report on; defaults to every tagged word in the corpus.
    #[arg(long)]
    word: Vec<Word>,
    #[arg(long, default_value = "basic")]
    features: String,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct AcquireArgs {
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Root of the local document store.
    #[arg(long, required = true)]
    store: PathBuf,
    #[arg(long, required = true)]
    word: Vec<Word>,
    /// Documents fetched per query.
    #[arg(long, default_value_t = 100)]
    limit: usize,
    /// Generated examples kept per sense.
    #[arg(long, default_value_t = 100)]
    cap: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long, value_enum, required = true)]
    kind: BaselineKind,
    #[arg(long, required = true)]
    corpus: PathBuf,
    #[arg(long, required = true)]
    inventory: PathBuf,
    /// Words to report on; defaults to every tagged word in the corpus.
    #[arg(long)]
    word: Vec<Word>,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaselineKind {
    Rand,
    Mfs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Table,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wsd: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Train(args) => cmd_train(args),
        Command::Tag(args) => cmd_tag(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Xval(args) => cmd_xval(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Noise(args) => cmd_noise(args),
        Command::Coarse(args) => cmd_coarse(args),
        Command::Allwords(args) => cmd_allwords(args),
        Command::Cross(args) => cmd_cross(args),
        Command::Report(args) => cmd_report(args),
        Command::Acquire(args) => cmd_acquire(args),
        Command::Baseline(args) => cmd_baseline(args),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read '{}'", path.display()))
}

fn load_validated(corpus: &Path, inventory: &Path) -> Result<(Corpus, SenseInventory)> {
    Ok(wsd_core::corpus::load_validated(
        &read(corpus)?,
        &read(inventory)?,
    )?)
}

fn resolve_features(spec: &str) -> Result<FeatureConfig> {
    if let Some(preset) = FeatureConfig::preset(spec) {
        return Ok(preset);
    }
    let path = Path::new(spec);
    if !path.is_file() {
        bail!("'{spec}' is neither a feature preset (basic, local, topical, all) nor a config file");
    }
    Ok(FeatureConfig::parse(&read(path)?)?)
}

/// Every word with at least one tagged occurrence, sorted.
fn tagged_words(corpus: &Corpus) -> Vec<Word> {
    let set: BTreeSet<Word> = corpus
        .documents
        .iter()
        .flat_map(|d| d.sentences.iter())
        .flat_map(|s| s.tokens.iter())
        .filter(|t| t.is_tagged())
        .map(|t| t.word())
        .collect();
    set.into_iter().collect()
}

fn report_cells(report: &EvalReport) -> Vec<String> {
    vec![
        report.n.to_string(),
        report.a.to_string(),
        num(report.c),
        num(report.precision()),
        num(report.recall()),
        num(report.coverage()),
    ]
}

const REPORT_COLUMNS: [&str; 6] = ["n", "a", "c", "precision", "recall", "coverage"];

fn cmd_train(args: TrainArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let examples = enumerate_targets(&corpus, &args.word);
    if examples.is_empty() {
        bail!("no tagged occurrences of '{}' in the corpus", args.word);
    }
    let list = DecisionList::train(&examples, &config, &inventory)?;
    eprintln!(
        "# wsd train corpus={} inventory={} word={} features={} seed={} entries={}",
        args.corpus.display(),
        args.inventory.display(),
        args.word,
        config.fingerprint(),
        args.common.seed,
        list.entries().len()
    );
    write_text(args.common.out.as_deref(), &list.to_text())
}

fn cmd_tag(args: TagArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let list = DecisionList::parse(&read(&args.list)?)?;
    if let Some(word) = &args.word {
        if word != list.word() {
            bail!(
                "list is for '{}' but --word says '{}'",
                list.word(),
                word
            );
        }
    }
    let config = FeatureConfig::from_fingerprint(list.fingerprint())?;
    let mut out = Output::new("tag");
    out.comment(format!(
        "list={} corpus={} word={} features={} seed={}",
        args.list.display(),
        args.corpus.display(),
        list.word(),
        list.fingerprint(),
        args.common.seed
    ));
    out.header(&[
        "doc", "sentence", "token", "outcome", "senses", "weight", "kind", "value",
    ]);
    for occurrence in enumerate_occurrences(&corpus, list.word()) {
        let features = extract(&occurrence, &config, &inventory);
        let prediction = list.classify(&features);
        let (outcome, senses) = match &prediction.outcome {
            Outcome::Decided(s) => ("decided", s.to_string()),
            Outcome::Tied(set) => (
                "tied",
                set.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            Outcome::Abstain => ("abstain", String::new()),
        };
        let (weight, kind, value) = match &prediction.matched {
            Some(entry) => (
                num(entry.weight),
                entry.feature.kind.name(),
                entry.feature.value.clone(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        out.row(vec![
            occurrence.doc.id.clone(),
            occurrence.sentence_index.to_string(),
            occurrence.token_index.to_string(),
            outcome.to_string(),
            senses,
            weight,
            kind,
            value,
        ]);
    }
    out.finish(args.common.out.as_deref(), false)
}

fn two_paths<'p>(paths: &'p [PathBuf], flag: &str) -> Result<(&'p Path, &'p Path)> {
    match paths {
        [a, b] => Ok((a, b)),
        _ => bail!("--{flag} must be given exactly twice (train, then test)"),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let (train_path, test_path) = two_paths(&args.corpus, "corpus")?;
    let (train_corpus, inventory) = load_validated(train_path, &args.inventory)?;
    let (test_corpus, _) = load_validated(test_path, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let mapping = SenseMapping::identity(&inventory);
    let outcome = cross_corpus_eval(
        &train_corpus,
        &test_corpus,
        &args.word,
        &mapping,
        &config,
        &inventory,
        &inventory,
    )?;
    let mut out = Output::new("eval");
    out.comment(format!(
        "train={} test={} inventory={} features={} seed={}",
        train_path.display(),
        test_path.display(),
        args.inventory.display(),
        config.fingerprint(),
        args.common.seed
    ));
    emit_cross(&mut out, &outcome);
    out.finish(args.common.out.as_deref(), false)
}

fn emit_cross(out: &mut Output, outcome: &wsd_core::eval::CrossCorpusOutcome) {
    out.header(&["word", "n_train", "n", "a", "c", "precision", "recall", "coverage"]);
    for row in &outcome.per_word {
        let mut cells = vec![row.word.to_string(), row.n_train.to_string()];
        cells.extend(report_cells(&row.report));
        out.row(cells);
    }
    let total_train: usize = outcome.per_word.iter().map(|r| r.n_train).sum();
    let mut cells = vec!["overall".to_string(), total_train.to_string()];
    cells.extend(report_cells(&outcome.overall));
    out.row(cells);
}

fn load_word_examples<'c>(
    corpus: &'c Corpus,
    word: &Word,
) -> Result<Vec<wsd_core::features::TrainingExample<'c>>> {
    let examples = enumerate_targets(corpus, word);
    if examples.is_empty() {
        bail!("no tagged occurrences of '{word}' in the corpus");
    }
    Ok(examples)
}

fn cmd_xval(args: XvalArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let examples = load_word_examples(&corpus, &args.word)?;
    let outcome = cross_validate(&examples, args.k, args.common.seed, &config, &inventory)?;
    let mut out = Output::new("xval");
    out.comment(format!(
        "corpus={} inventory={} word={} features={} k={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        args.word,
        config.fingerprint(),
        args.k,
        args.common.seed
    ));
    out.header(&REPORT_COLUMNS);
    out.row(report_cells(&outcome.report));
    out.finish(args.common.out.as_deref(), false)
}

fn cmd_curve(args: CurveArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let examples = load_word_examples(&corpus, &args.word)?;
    let spec = CurveSpec {
        fractions: if args.fractions.is_empty() {
            CurveSpec::default().fractions
        } else {
            args.fractions.clone()
        },
        rounds: args.rounds,
        seed: args.common.seed,
    };
    let points = learning_curve(&examples, &spec, args.k, &config, &inventory)?;
    let mut out = Output::new("curve");
    out.comment(format!(
        "corpus={} inventory={} word={} features={} k={} rounds={} fractions={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        args.word,
        config.fingerprint(),
        args.k,
        spec.rounds,
        spec.fractions
            .iter()
            .map(|f| num(*f))
            .collect::<Vec<_>>()
            .join("|"),
        args.common.seed
    ));
    out.header(&["fraction", "mean_recall", "mean_train_size"]);
    for point in points {
        out.row(vec![
            num(point.fraction),
            num(point.mean_recall),
            num(point.mean_train_size),
        ]);
    }
    out.finish(args.common.out.as_deref(), false)
}

fn cmd_noise(args: NoiseArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let examples = load_word_examples(&corpus, &args.word)?;
    let fractions = if args.fractions.is_empty() {
        vec![0.0, 0.1, 0.2, 0.3, 0.4]
    } else {
        args.fractions.clone()
    };
    let mut out = Output::new("noise");
    out.comment(format!(
        "corpus={} inventory={} word={} features={} k={} fractions={} force_different={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        args.word,
        config.fingerprint(),
        args.k,
        fractions.iter().map(|f| num(*f)).collect::<Vec<_>>().join("|"),
        args.force_different,
        args.common.seed
    ));
    out.header(&["fraction", "n", "a", "c", "precision", "recall", "coverage"]);
    for &fraction in &fractions {
        let spec = NoiseSpec {
            fraction,
            seed: args.common.seed,
            force_different: args.force_different,
        };
        let outcome = noisy_cross_validate(
            &examples,
            args.k,
            args.common.seed,
            &spec,
            &config,
            &inventory,
        )?;
        let mut cells = vec![num(fraction)];
        cells.extend(report_cells(&outcome.report));
        out.row(cells);
    }
    out.finish(args.common.out.as_deref(), false)
}

fn cmd_coarse(args: CoarseArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let examples = load_word_examples(&corpus, &args.word)?;
    let fine = cross_validate(&examples, args.k, args.common.seed, &config, &inventory)?;
    let coarse =
        cross_validate_coarse(&examples, args.k, args.common.seed, &config, &inventory)?;
    let mut out = Output::new("coarse");
    out.comment(format!(
        "corpus={} inventory={} word={} features={} k={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        args.word,
        config.fingerprint(),
        args.k,
        args.common.seed
    ));
    out.header(&["level", "n", "a", "c", "precision", "recall", "coverage"]);
    for (level, report) in [("fine", fine.report), ("coarse", coarse.report)] {
        let mut cells = vec![level.to_string()];
        cells.extend(report_cells(&report));
        out.row(cells);
    }
    out.finish(args.common.out.as_deref(), false)
}

fn cmd_allwords(args: AllwordsArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let holdout: BTreeSet<String> = args.holdouts.iter().cloned().collect();
    let outcome = all_words_eval(&corpus, &holdout, &config, &inventory)?;
    let mut out = Output::new("allwords");
    out.comment(format!(
        "corpus={} inventory={} holdout={} features={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        args.holdouts.join("|"),
        config.fingerprint(),
        args.common.seed
    ));
    out.header(&[
        "scope", "n", "a", "c", "precision", "recall", "coverage", "mfs_precision",
        "mfs_coverage", "random",
    ]);
    for doc in &outcome.per_doc {
        let mut cells = vec![doc.doc_id.clone()];
        cells.extend(report_cells(&doc.dl));
        cells.push(num(doc.mfs.precision()));
        cells.push(num(doc.mfs.coverage()));
        cells.push(num(doc.random_precision));
        out.row(cells);
    }
    let mut cells = vec!["overall".to_string()];
    cells.extend(report_cells(&outcome.dl));
    cells.push(num(outcome.mfs.precision()));
    cells.push(num(outcome.mfs.coverage()));
    cells.push(num(outcome.random_precision));
    out.row(cells);
    out.finish(args.common.out.as_deref(), false)
}

fn cmd_cross(args: CrossArgs) -> Result<()> {
    let (train_path, test_path) = two_paths(&args.corpus, "corpus")?;
    let (train_inv_path, test_inv_path) = match args.inventory.as_slice() {
        [shared] => (shared.as_path(), shared.as_path()),
        [a, b] => (a.as_path(), b.as_path()),
        _ => bail!("--inventory must be given once (shared) or twice (train, then test)"),
    };
    let (train_corpus, train_inventory) = load_validated(train_path, train_inv_path)?;
    let (test_corpus, test_inventory) = load_validated(test_path, test_inv_path)?;
    let mapping = SenseMapping::parse(&read(&args.mapping)?)?;
    let config = resolve_features(&args.features)?;
    let outcome = cross_corpus_eval(
        &train_corpus,
        &test_corpus,
        &args.word,
        &mapping,
        &config,
        &train_inventory,
        &test_inventory,
    )?;
    let mut out = Output::new("cross");
    out.comment(format!(
        "train={} test={} inventories={}|{} mapping={} features={} seed={}",
        train_path.display(),
        test_path.display(),
        train_inv_path.display(),
        test_inv_path.display(),
        args.mapping.display(),
        config.fingerprint(),
        args.common.seed
    ));
    emit_cross(&mut out, &outcome);
    out.finish(args.common.out.as_deref(), false)
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let config = resolve_features(&args.features)?;
    let words = if args.word.is_empty() {
        tagged_words(&corpus)
    } else {
        args.word.clone()
    };
    let report = word_report(&corpus, &words, args.k, args.common.seed, &config, &inventory)?;
    let table = args.format == Format::Table;
    let fmt = if table { num2 } else { num };
    let mut out = Output::new("report");
    out.comment(format!(
        "corpus={} inventory={} words={} features={} k={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        words.len(),
        config.fingerprint(),
        args.k,
        args.common.seed
    ));
    out.header(&[
        "word", "senses", "rand", "examples", "ex_per_sense", "mfs", "dl_precision",
        "dl_coverage", "skew",
    ]);
    for row in &report.rows {
        out.row(vec![
            row.word.to_string(),
            row.n_senses.to_string(),
            fmt(row.random_precision),
            row.n_examples.to_string(),
            fmt(row.examples_per_sense),
            fmt(row.mfs_precision),
            fmt(row.dl_precision),
            fmt(row.dl_coverage),
            fmt(row.skew),
        ]);
    }
    let macro_mean = |f: fn(&wsd_core::eval::WordReportRow) -> f64| -> f64 {
        if report.rows.is_empty() {
            0.0
        } else {
            report.rows.iter().map(f).sum::<f64>() / report.rows.len() as f64
        }
    };
    let total_examples: usize = report.rows.iter().map(|r| r.n_examples).sum();
    out.row(vec![
        "overall-micro".to_string(),
        String::new(),
        fmt(macro_mean(|r| r.random_precision)),
        total_examples.to_string(),
        String::new(),
        fmt(report.mfs_micro.precision()),
        fmt(report.dl_micro.precision()),
        fmt(report.dl_micro.coverage()),
        String::new(),
    ]);
    out.row(vec![
        "overall-macro".to_string(),
        String::new(),
        fmt(macro_mean(|r| r.random_precision)),
        total_examples.to_string(),
        String::new(),
        fmt(macro_mean(|r| r.mfs_precision)),
        fmt(macro_mean(|r| r.dl_precision)),
        fmt(macro_mean(|r| r.dl_coverage)),
        String::new(),
    ]);
    out.finish(args.common.out.as_deref(), table)
}

fn cmd_acquire(args: AcquireArgs) -> Result<()> {
    let inventory = SenseInventory::parse(&read(&args.inventory)?)?;
    let store = DirStore::open(&args.store)?;
    let options = AcquireOptions {
        doc_limit: args.limit,
        example_cap: args.cap,
        ..AcquireOptions::default()
    };
    let outcome = acquire_corpus(&inventory, &args.word, &store, &options)?;
    eprintln!(
        "# wsd acquire inventory={} store={} words={} limit={} cap={} seed={} documents={}",
        args.inventory.display(),
        args.store.display(),
        args.word
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join("|"),
        args.limit,
        args.cap,
        args.common.seed,
        outcome.corpus.documents.len()
    );
    for warning in &outcome.warnings {
        eprintln!("# warning: {warning}");
    }
    write_text(args.common.out.as_deref(), &outcome.corpus.to_text())
}

fn cmd_baseline(args: BaselineArgs) -> Result<()> {
    let (corpus, inventory) = load_validated(&args.corpus, &args.inventory)?;
    let words = if args.word.is_empty() {
        tagged_words(&corpus)
    } else {
        args.word.clone()
    };
    let kind = match args.kind {
        BaselineKind::Rand => "rand",
        BaselineKind::Mfs => "mfs",
    };
    let mut out = Output::new("baseline");
    out.comment(format!(
        "kind={kind} corpus={} inventory={} words={} k={} seed={}",
        args.corpus.display(),
        args.inventory.display(),
        words.len(),
        args.k,
        args.common.seed
    ));
    match args.kind {
        BaselineKind::Rand => {
            out.header(&["word", "examples", "random_precision"]);
            let mut all = Vec::new();
            for word in &words {
                let examples = enumerate_targets(&corpus, word);
                out.row(vec![
                    word.to_string(),
                    examples.len().to_string(),
                    num(random_baseline(&examples, &inventory)),
                ]);
                all.extend(examples);
            }
            out.row(vec![
                "overall".to_string(),
                all.len().to_string(),
                num(random_baseline(&all, &inventory)),
            ]);
        }
        BaselineKind::Mfs => {
            out.header(&["word", "n", "a", "c", "precision", "recall", "coverage"]);
            let mut overall = EvalReport::default();
            for word in &words {
                let examples = load_word_examples(&corpus, word)?;
                let word_seed =
                    wsd_core::exec::derive_seed(args.common.seed, &["word", &word.to_string()]);
                let k_eff = args.k.min(examples.len());
                if k_eff < 2 {
                    bail!("'{word}' has too few examples for cross-validated MFS");
                }
                let plan = FoldPlan::new(examples.len(), k_eff, word_seed)?;
                let report = mfs_cross_validate(&examples, &plan)?;
                let mut cells = vec![word.to_string()];
                cells.extend(report_cells(&report));
                out.row(cells);
                overall += report;
            }
            let mut cells = vec!["overall".to_string()];
            cells.extend(report_cells(&overall));
            out.row(cells);
        }
    }
    out.finish(args.common.out.as_deref(), false)
}
