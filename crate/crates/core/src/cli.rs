//! The `calsim` command line: `prepare`, `label-sentences`, `run`, `eval`.
//!
//! Exit status is 0 on success, 1 for usage errors (bad flags, unknown
//! strategy codes, malformed budgets) and 2 for data errors (missing files,
//! parse failures, inconsistent qrels).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::TrainParams;
use crate::corpus::{
    corpus_stats, derive_sentence_qrels_from_passages, ingest_documents, load_passages, load_qrels,
    propagate_nonrelevant, read_documents, read_presegmented, read_store, read_topics, write_store, Collection,
    Granularity, QrelsMap, RuleConfig, SegmenterConfig, Topic, DEFAULT_ABBREVIATIONS,
};
use crate::engine::{
    parse_strategy_list, BudgetSpec, IndexedCollection, RunConfig, RunLog, RunState, StrategyCode, TopicJudgments,
    RANDOM_NEGATIVES,
};
use crate::eval::{
    gain_curve, lambda_sweep, parse_lambda_grid, recall_table, write_comparisons_csv, DatasetRuns, EffortLevel,
    EffortModel,
};
use crate::features::Vocabulary;
use crate::{Error, Result};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;

pub const STORE_FILE: &str = "store.jsonl";
pub const VOCAB_FILE: &str = "vocab.tsv";
pub const MANIFEST_FILE: &str = "manifest.toml";
pub const RUNS_DIR: &str = "runs";

#[derive(Debug, Parser)]
#[command(name = "calsim", version, about = "Continuous active learning simulator")]
pub struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment a collection and write the store, vocabulary and label statistics.
    Prepare(PrepareArgs),
    /// Derive sentence qrels from passage judgments.
    LabelSentences(LabelArgs),
    /// Simulate review runs for every (topic, strategy).
    Run(RunArgs),
    /// Recall tables, gain curves and strategy comparisons from run logs.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct PrepareArgs {
    /// Directory of .txt files or a JSON-lines file of {"id", "text"}.
    #[arg(long)]
    collection: PathBuf,
    /// JSON lines of {"id", "sentences": [{"start", "end"}]} to use instead
    /// of rule-based segmentation.
    #[arg(long)]
    presegmented: Option<PathBuf>,
    /// Extra abbreviations, one per line, that do not end a sentence.
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    #[arg(long)]
    doc_qrels: Option<PathBuf>,
    #[arg(long)]
    sent_qrels: Option<PathBuf>,
    /// Collection name in the statistics table.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct LabelArgs {
    /// Prepared collection directory.
    #[arg(long)]
    collection: PathBuf,
    /// Lines of `topic doc_id start end` (character offsets).
    #[arg(long)]
    passages: PathBuf,
    /// Document qrels; when given, sentences of non-relevant documents are
    /// labeled non-relevant too.
    #[arg(long)]
    doc_qrels: Option<PathBuf>,
    /// Output sentence qrels file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// TOML manifest; flags override its values.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Prepared collection directory.
    #[arg(long)]
    collection: Option<PathBuf>,
    /// JSON lines of {"topic", "statement"}.
    #[arg(long)]
    topics: Option<PathBuf>,
    #[arg(long)]
    doc_qrels: Option<PathBuf>,
    #[arg(long)]
    sent_qrels: Option<PathBuf>,
    /// Comma-separated codes such as `ddd,sdd`, or `all`.
    #[arg(long)]
    strategies: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// `aR+b` or a number of judgments.
    #[arg(long)]
    budget: Option<String>,
    /// Pegasos iterations per training round.
    #[arg(long)]
    iterations: Option<usize>,
    /// Pegasos regularization.
    #[arg(long)]
    regularization: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Output directory of `run` (repeat for several datasets).
    #[arg(long, required = true)]
    runs: Vec<PathBuf>,
    /// Document qrels, one per --runs.
    #[arg(long, required = true)]
    doc_qrels: Vec<PathBuf>,
    /// Dataset names, one per --runs (default: directory name).
    #[arg(long)]
    name: Vec<String>,
    /// Only evaluate these strategies.
    #[arg(long)]
    strategies: Option<String>,
    /// Pairs `A:B` to compare as B - A (default: ddd against every other strategy).
    #[arg(long)]
    compare: Vec<String>,
    #[arg(long, default_value = "0:1:0.05")]
    lambda_grid: String,
    /// Effort multiples of R for the lambda sweep.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    sweep_a: Vec<f64>,
    #[arg(long)]
    no_gain_curves: bool,
    #[arg(long)]
    out: PathBuf,
}

/// Parses `args` (including the program name), runs the command and maps
/// the outcome to an exit status.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .try_init();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { EXIT_USAGE } else { EXIT_DATA })
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Prepare(a) => prepare(a),
        Command::LabelSentences(a) => label_sentences(a),
        Command::Run(a) => run(a),
        Command::Eval(a) => eval(a),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn write_with<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let mut w = create(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

fn prepare(a: PrepareArgs) -> Result<()> {
    let records = read_documents(&a.collection)?;
    let segmenter = match &a.presegmented {
        Some(p) => SegmenterConfig::PreSegmented(read_presegmented(p)?),
        None => {
            let mut abbreviations: Vec<String> = DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()).collect();
            if let Some(p) = &a.abbreviations {
                let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
                abbreviations.extend(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from));
            }
            SegmenterConfig::Rules(RuleConfig::with_abbreviations(abbreviations))
        }
    };
    let collection = ingest_documents(records, &segmenter)?;
    let vocab = Vocabulary::from_collection(&collection);

    fs::create_dir_all(&a.out).map_err(|e| Error::io(&a.out, e))?;
    write_store(&collection, &a.out.join(STORE_FILE))?;
    write_with(&a.out.join(VOCAB_FILE), |w| vocab.write_tsv(w))?;

    let doc_qrels = match &a.doc_qrels {
        Some(p) => load_qrels(p, Granularity::Document)?,
        None => QrelsMap::new(Granularity::Document),
    };
    let sent_qrels = match &a.sent_qrels {
        Some(p) => load_qrels(p, Granularity::Sentence)?,
        None => QrelsMap::new(Granularity::Sentence),
    };
    doc_qrels.validate(&collection)?;
    sent_qrels.validate(&collection)?;
    let report = corpus_stats(&collection, &doc_qrels, &sent_qrels);
    let name = a.name.clone().unwrap_or_else(|| dir_name(&a.collection));
    write_with(&a.out.join("stats.csv"), |w| report.write_csv(&name, w))?;
    write_with(&a.out.join("first_position.csv"), |w| report.write_histogram_csv(w))?;
    log::info!(
        "{} documents, {} sentences, {} terms",
        collection.num_documents(),
        collection.num_sentences(),
        vocab.len()
    );
    Ok(())
}

fn dir_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "collection".into())
}

/// Loads the store written by `prepare`.
pub fn load_prepared(dir: &Path) -> Result<IndexedCollection> {
    let collection = read_store(&dir.join(STORE_FILE))?;
    let vocab_path = dir.join(VOCAB_FILE);
    let file = File::open(&vocab_path).map_err(|e| Error::io(&vocab_path, e))?;
    let vocab = Vocabulary::read_tsv(BufReader::new(file), &vocab_path)?;
    Ok(IndexedCollection::with_vocabulary(collection, vocab))
}

fn label_sentences(a: LabelArgs) -> Result<()> {
    let collection: Collection = read_store(&a.collection.join(STORE_FILE))?;
    let passages = load_passages(&a.passages)?;
    let derived = derive_sentence_qrels_from_passages(&passages, &collection)?;
    let mut qrels = derived.qrels;
    if let Some(p) = &a.doc_qrels {
        let doc_qrels = load_qrels(p, Granularity::Document)?;
        let added = propagate_nonrelevant(&doc_qrels, &mut qrels, &collection)?;
        log::info!("{added} sentence labels from non-relevant documents");
    }
    if derived.clamped > 0 {
        log::warn!("{} passages clamped to document bounds", derived.clamped);
    }
    write_with(&a.out, |w| qrels.write_trec(w))
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    collection: Option<PathBuf>,
    topics: Option<PathBuf>,
    doc_qrels: Option<PathBuf>,
    sent_qrels: Option<PathBuf>,
    strategies: Option<Vec<StrategyCode>>,
    seed: Option<u64>,
    budget: Option<String>,
    iterations: Option<usize>,
    regularization: Option<f64>,
    random_negatives: Option<usize>,
    out: Option<PathBuf>,
}

/// Fully resolved run configuration; written to the output directory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub collection: PathBuf,
    pub topics: PathBuf,
    pub doc_qrels: PathBuf,
    pub sent_qrels: PathBuf,
    pub strategies: Vec<StrategyCode>,
    pub seed: u64,
    pub budget: String,
    pub iterations: usize,
    pub regularization: f64,
    pub random_negatives: usize,
    pub out: PathBuf,
}

fn read_manifest(path: &Path) -> Result<ManifestFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut m: ManifestFile = toml::from_str(&text).map_err(|e| {
        let line = e.span().map_or(0, |s| text[..s.start].lines().count().max(1));
        Error::parse(path, line, e.message())
    })?;
    // relative paths are relative to the manifest
    let base = path.parent().unwrap_or(Path::new(""));
    for p in [
        &mut m.collection,
        &mut m.topics,
        &mut m.doc_qrels,
        &mut m.sent_qrels,
        &mut m.out,
    ]
    .into_iter()
    .flatten()
    {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    }
    Ok(m)
}

fn resolve_manifest(a: &RunArgs) -> Result<RunManifest> {
    let file = match &a.manifest {
        Some(p) => read_manifest(p)?,
        None => ManifestFile::default(),
    };
    let missing = |flag: &str| Error::InvalidParameter(format!("--{flag} is required (flag or manifest)"));
    let strategies = match &a.strategies {
        Some(s) => parse_strategy_list(s)?,
        None => file.strategies.unwrap_or_else(|| StrategyCode::all().to_vec()),
    };
    let defaults = TrainParams::default();
    let m = RunManifest {
        collection: a
            .collection
            .clone()
            .or(file.collection)
            .ok_or_else(|| missing("collection"))?,
        topics: a.topics.clone().or(file.topics).ok_or_else(|| missing("topics"))?,
        doc_qrels: a
            .doc_qrels
            .clone()
            .or(file.doc_qrels)
            .ok_or_else(|| missing("doc-qrels"))?,
        sent_qrels: a
            .sent_qrels
            .clone()
            .or(file.sent_qrels)
            .ok_or_else(|| missing("sent-qrels"))?,
        strategies,
        seed: a.seed.or(file.seed).unwrap_or(0),
        budget: a
            .budget
            .clone()
            .or(file.budget)
            .unwrap_or_else(|| BudgetSpec::default().to_string()),
        iterations: a.iterations.or(file.iterations).unwrap_or(defaults.iterations),
        regularization: a.regularization.or(file.regularization).unwrap_or(defaults.lambda),
        random_negatives: file.random_negatives.unwrap_or(RANDOM_NEGATIVES),
        out: a.out.clone().or(file.out).ok_or_else(|| missing("out"))?,
    };
    m.budget.parse::<BudgetSpec>()?;
    if m.strategies.is_empty() {
        return Err(Error::InvalidParameter("no strategies given".into()));
    }
    m.train_params().validate()?;
    Ok(m)
}

impl RunManifest {
    fn train_params(&self) -> TrainParams {
        TrainParams {
            lambda: self.regularization,
            iterations: self.iterations,
            seed: 0,
        }
    }
}

/// Per-run seed derived from the manifest seed, topic and strategy
/// (FNV-1a over the names, then a SplitMix64 finalizer).
pub fn derive_seed(seed: u64, topic: &str, strategy: StrategyCode) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in topic.bytes().chain([0]).chain(strategy.to_string().bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Path of one run log below an output directory.
pub fn run_log_path(out: &Path, strategy: StrategyCode, topic: &str) -> PathBuf {
    out.join(RUNS_DIR)
        .join(strategy.to_string())
        .join(format!("{topic}.tsv"))
}

fn run(a: RunArgs) -> Result<()> {
    let m = resolve_manifest(&a)?;
    let budget: BudgetSpec = m.budget.parse()?;
    let index = load_prepared(&m.collection)?;
    let topics = read_topics(&m.topics)?;
    let doc_qrels = load_qrels(&m.doc_qrels, Granularity::Document)?;
    let sent_qrels = load_qrels(&m.sent_qrels, Granularity::Sentence)?;
    let orphans: Vec<String> = topics
        .iter()
        .filter(|t| doc_qrels.relevant_count(&t.topic) == 0)
        .map(|t| t.topic.clone())
        .collect();
    if !orphans.is_empty() {
        return Err(Error::OrphanTopics(orphans));
    }

    fs::create_dir_all(&m.out).map_err(|e| Error::io(&m.out, e))?;
    let manifest_text = toml::to_string(&m).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    write_with(&m.out.join(MANIFEST_FILE), |w| w.write_all(manifest_text.as_bytes()))?;

    let judgments: Vec<TopicJudgments> = topics
        .iter()
        .map(|t| TopicJudgments::new(&t.topic, &index.collection, &doc_qrels, &sent_qrels))
        .collect();
    let jobs: Vec<(usize, StrategyCode)> = (0..topics.len())
        .flat_map(|t| m.strategies.iter().map(move |&s| (t, s)))
        .collect();
    jobs.par_iter().try_for_each(|&(t, strategy)| {
        let topic = &topics[t];
        let wrap = |e: Error| Error::InRun {
            topic: topic.topic.clone(),
            strategy: strategy.to_string(),
            source: Box::new(e),
        };
        let log = run_one(&index, &judgments[t], topic, strategy, budget, &m).map_err(wrap)?;
        write_with(&run_log_path(&m.out, strategy, &topic.topic), |w| log.write_tsv(w)).map_err(wrap)
    })
}

fn run_one(
    index: &IndexedCollection,
    judgments: &TopicJudgments,
    topic: &Topic,
    strategy: StrategyCode,
    budget: BudgetSpec,
    m: &RunManifest,
) -> Result<RunLog> {
    let config = RunConfig {
        strategy,
        seed: derive_seed(m.seed, &topic.topic, strategy),
        budget: budget.resolve(judgments.relevant_docs()),
        train: m.train_params(),
        random_negatives: m.random_negatives,
    };
    let log = RunState::init(index, &topic.topic, &topic.statement, config)?.run(index, judgments)?;
    log::info!("topic {} {strategy}: {} judgments", topic.topic, log.len());
    Ok(log)
}

/// Reads every `runs/<strategy>/<topic>.tsv` below a `run` output directory
/// (or directly below `dir` if it has no `runs` subdirectory).
pub fn read_run_dir(dir: &Path) -> Result<BTreeMap<StrategyCode, Vec<RunLog>>> {
    let root = if dir.join(RUNS_DIR).is_dir() {
        dir.join(RUNS_DIR)
    } else {
        dir.to_path_buf()
    };
    let mut out: BTreeMap<StrategyCode, Vec<RunLog>> = BTreeMap::new();
    for entry in sorted_entries(&root)? {
        let Some(strategy) = entry.file_name().and_then(|n| n.to_str()).and_then(|n| n.parse().ok()) else {
            if entry.is_dir() {
                log::warn!("skipping {}: not a strategy code", entry.display());
            }
            continue;
        };
        if !entry.is_dir() {
            continue;
        }
        let logs = out.entry(strategy).or_default();
        for file in sorted_entries(&entry)? {
            if file.extension().and_then(|e| e.to_str()) != Some("tsv") {
                continue;
            }
            let topic = file
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            let f = File::open(&file).map_err(|e| Error::io(&file, e))?;
            logs.push(RunLog::read_tsv(BufReader::new(f), &topic, strategy, &file)?);
        }
    }
    Ok(out)
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<_>>()?;
    v.sort();
    Ok(v)
}

struct Dataset {
    name: String,
    qrels: QrelsMap,
    runs: BTreeMap<StrategyCode, Vec<RunLog>>,
}

fn parse_pair(s: &str) -> Result<(StrategyCode, StrategyCode)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("comparison `{s}` is not of the form A:B")))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn eval(a: EvalArgs) -> Result<()> {
    if a.runs.len() != a.doc_qrels.len() {
        return Err(Error::InvalidParameter("give one --doc-qrels per --runs".into()));
    }
    if !a.name.is_empty() && a.name.len() != a.runs.len() {
        return Err(Error::InvalidParameter("give one --name per --runs".into()));
    }
    let filter = a.strategies.as_deref().map(parse_strategy_list).transpose()?;
    let pairs: Vec<(StrategyCode, StrategyCode)> = a.compare.iter().map(|s| parse_pair(s)).collect::<Result<_>>()?;
    let grid = parse_lambda_grid(&a.lambda_grid)?;
    if a.sweep_a.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::InvalidParameter("--sweep-a values must be positive".into()));
    }

    let mut datasets = Vec::new();
    for (i, (runs_dir, qrels_path)) in a.runs.iter().zip(&a.doc_qrels).enumerate() {
        let name = a.name.get(i).cloned().unwrap_or_else(|| dir_name(runs_dir));
        let qrels = load_qrels(qrels_path, Granularity::Document)?;
        let mut runs = read_run_dir(runs_dir)?;
        if let Some(keep) = &filter {
            runs.retain(|s, _| keep.contains(s));
        }
        let mut orphans: Vec<String> = runs
            .values()
            .flatten()
            .filter(|l| qrels.relevant_count(&l.topic_id) == 0)
            .map(|l| l.topic_id.clone())
            .collect();
        orphans.sort();
        orphans.dedup();
        if !orphans.is_empty() {
            return Err(Error::OrphanTopics(orphans));
        }
        if runs.is_empty() {
            log::warn!("{}: no run logs found", runs_dir.display());
        }
        datasets.push(Dataset { name, qrels, runs });
    }

    let all_logs: Vec<Vec<RunLog>> = datasets
        .iter()
        .map(|d| d.runs.values().flatten().cloned().collect())
        .collect();
    let views: Vec<DatasetRuns<'_>> = datasets
        .iter()
        .zip(&all_logs)
        .map(|(d, logs)| DatasetRuns {
            name: &d.name,
            doc_qrels: &d.qrels,
            logs,
        })
        .collect();
    let table = recall_table(&views, &EffortLevel::standard())?;
    write_with(&a.out.join("recall_table.csv"), |w| table.write_csv(w))?;
    write_with(&a.out.join("recall_by_topic.csv"), |w| table.write_topics_csv(w))?;

    for d in &datasets {
        if !a.no_gain_curves {
            for (strategy, logs) in &d.runs {
                for log in logs {
                    for model in [EffortModel::JUDGE, EffortModel::HALF, EffortModel::SENT] {
                        let curve = gain_curve(log, &d.qrels, model)?;
                        let path = a
                            .out
                            .join("gain")
                            .join(&d.name)
                            .join(strategy.to_string())
                            .join(format!("{}_{model}.csv", log.topic_id));
                        write_with(&path, |w| curve.write_csv(w))?;
                    }
                }
            }
        }

        let pairs: Vec<(StrategyCode, StrategyCode)> = if pairs.is_empty() && d.runs.contains_key(&StrategyCode::DDD) {
            d.runs
                .keys()
                .filter(|&&s| s != StrategyCode::DDD)
                .map(|&s| (StrategyCode::DDD, s))
                .collect()
        } else {
            pairs.clone()
        };
        for (sa, sb) in pairs {
            let (Some(ra), Some(rb)) = (d.runs.get(&sa), d.runs.get(&sb)) else {
                return Err(Error::InvalidParameter(format!("{}: no runs for {sa} or {sb}", d.name)));
            };
            let mut points = Vec::new();
            for &mult in &a.sweep_a {
                points.extend(lambda_sweep(ra, rb, &d.qrels, mult, &grid)?);
            }
            let path = a
                .out
                .join("comparisons")
                .join(&d.name)
                .join(format!("{sa}_vs_{sb}.csv"));
            write_with(&path, |w| write_comparisons_csv(&points, w))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(0, "401", StrategyCode::DDD);
        assert_eq!(a, derive_seed(0, "401", StrategyCode::DDD));
        assert_ne!(a, derive_seed(1, "401", StrategyCode::DDD));
        assert_ne!(a, derive_seed(0, "402", StrategyCode::DDD));
        assert_ne!(a, derive_seed(0, "401", StrategyCode::SDD));
        // the separator keeps ("40", "1...") and ("401", ...) apart
        assert_ne!(
            derive_seed(0, "40", StrategyCode::DDD),
            derive_seed(0, "40\0", StrategyCode::DDD)
        );
    }

    #[test]
    fn manifest_flags_override() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.toml");
        fs::write(
            &path,
            "collection = \"prep\"\ntopics = \"t.jsonl\"\ndoc_qrels = \"d\"\nsent_qrels = \"s\"\nstrategies = [\"ddd\", \"sdd\"]\nseed = 7\nout = \"o\"\n",
        )
        .unwrap();
        let args = RunArgs {
            manifest: Some(path),
            collection: None,
            topics: None,
            doc_qrels: None,
            sent_qrels: None,
            strategies: None,
            seed: Some(9),
            budget: Some("2R+10".into()),
            iterations: None,
            regularization: None,
            out: None,
        };
        let m = resolve_manifest(&args).unwrap();
        assert_eq!(m.collection, dir.path().join("prep"));
        assert_eq!(m.strategies, vec![StrategyCode::DDD, StrategyCode::SDD]);
        assert_eq!((m.seed, m.budget.as_str(), m.iterations), (9, "2R+10", 200_000));

        let bad = RunArgs {
            budget: Some("R-3".into()),
            ..args
        };
        assert!(resolve_manifest(&bad).unwrap_err().is_usage());
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("ddd:sdd").unwrap(), (StrategyCode::DDD, StrategyCode::SDD));
        assert!(parse_pair("ddd").unwrap_err().is_usage());
        assert!(parse_pair("ddd:xyz").unwrap_err().is_usage());
    }
}
