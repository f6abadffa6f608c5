//! Command-line entry points: batch classification of parsed sentences,
//! corpus index management and ad-hoc queries, and evaluation against gold
//! annotations.
//!
//! Numeric options resolve with the precedence flags > environment
//! (`PLEONIT_<NAME>`) > config file (`--config`, key=value lines) >
//! built-in defaults.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pleonit::baseline::{pha_classify, PhaConfig};
use pleonit::corpus::{CachingBackend, CountBackend, FixtureStore, LocalIndex};
use pleonit::decision::{DecisionConstants, InstanceRecord, ReadingOutcome};
use pleonit::evalstats::{
    align, approx_randomization, bootstrap_ci, cohen_kappa, confusion, metric_value,
    parse_gold_tsv, Category, IntervalEstimate, IntervalMethod, Statistic,
};
use pleonit::filters::FilterFlags;
use pleonit::label::ItLabel;
use pleonit::pipeline::{parse_id_map, Pipeline};
use pleonit::querygen::{build_bundle, EngineMode, PhraseQuery, StubSet};
use pleonit::treebank::{
    find_it_instances, generate_readings, parse_bracketed, to_dependency, HeadTable,
};
use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "pleonit", version, about = "Pleonastic `it` classifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every `it` instance in bracketed parse files.
    Classify(ClassifyArgs),
    /// Score predictions against gold annotations.
    Eval(EvalArgs),
    /// Build and query a local corpus index.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Bracketed parse files (Penn-style .mrg or one tree per line).
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// `local-index:<path>` or `fixture:<path>[,strict]`.
    #[arg(long)]
    backend: String,
    /// Sentence-id sidecar (tab-separated `line_number` and `article:sentence`).
    #[arg(long)]
    ids: Option<PathBuf>,
    /// Output file for the JSON-lines records (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    nmin: Option<u64>,
    #[arg(long)]
    rexp: Option<f64>,
    #[arg(long)]
    rscarce: Option<f64>,
    #[arg(long)]
    rzero: Option<f64>,
    /// Optional filters: `all`, `none`, or a comma list drawn from
    /// perfect,multivp,nppredrrc,modal.
    #[arg(long)]
    filters: Option<String>,
    /// Generate (and apply as a veto) the missing-object probes.
    #[arg(long)]
    pattern3: bool,
    /// Classifier to run: `main` or `pha` (token-based baseline).
    #[arg(long, default_value = "main")]
    system: String,
    /// Write-through query cache file for local-index runs
    /// (`<index>.cache.tsv` by default; `--no-cache` disables).
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// key=value config file consulted after flags and environment.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Log every issued query with its purpose tag to stderr.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Gold annotations (tab-separated `sentence_id`, `token_index`, `label`).
    #[arg(long)]
    gold: PathBuf,
    /// Predictions of system A (JSON-lines records from `classify`).
    #[arg(long)]
    pred: PathBuf,
    /// Predictions of system B: adds significance tests and kappa.
    #[arg(long)]
    pred_b: Option<PathBuf>,
    /// Bootstrap replicate count.
    #[arg(long)]
    bootstrap: Option<u64>,
    /// Randomization shuffle count.
    #[arg(long)]
    shuffles: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Test statistic for the significance tests: f, p, r, or accuracy.
    #[arg(long, default_value = "f")]
    statistic: String,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Build a persistent index from a tokenized corpus (one sentence per
    /// line).
    Build {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count a canonical query (and show the first snippet batch), or dump
    /// the generated query bundles for a parse file without executing them.
    Query {
        #[arg(long)]
        index: Option<PathBuf>,
        /// Canonical query text, e.g. "it is|was|'s easy to".
        query: Option<String>,
        #[arg(long, default_value_t = 10)]
        snippets: usize,
        /// Parse file whose query bundles should be printed (dry run).
        #[arg(long)]
        dump_bundle: Option<PathBuf>,
        /// Restrict the dumped bundle to single-form queries.
        #[arg(long)]
        simple_forms: bool,
        #[arg(long)]
        pattern3: bool,
    },
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Classify(args) => classify(args),
        Command::Eval(args) => eval(args),
        Command::Corpus { command } => corpus(command),
    }
}

/// flags > environment > config file > default.
struct Settings {
    config: HashMap<String, String>,
}

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut config = HashMap::new();
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?;
            for (n, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| anyhow!("{}:{}: expected key=value", p.display(), n + 1))?;
                config.insert(k.trim().to_lowercase(), v.trim().to_string());
            }
        }
        Ok(Settings { config })
    }

    fn get<T: std::str::FromStr>(&self, flag: Option<T>, name: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        let env_key = format!("PLEONIT_{}", name.to_uppercase());
        let raw = std::env::var(&env_key)
            .ok()
            .or_else(|| self.config.get(name).cloned());
        match raw {
            Some(text) => text
                .trim()
                .parse()
                .map_err(|e| anyhow!("bad value for {name}: {e}")),
            None => Ok(default),
        }
    }
}

fn parse_filters(spec: &str) -> Result<FilterFlags> {
    match spec {
        "all" => return Ok(FilterFlags::default()),
        "none" => return Ok(FilterFlags::none()),
        _ => {}
    }
    let mut flags = FilterFlags::none();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "perfect" => flags.perfect_tense = true,
            "multivp" => flags.multiple_vps = true,
            "nppredrrc" => flags.np_predicate_rrc = true,
            "modal" => flags.modal_with_if_or_wh = true,
            other => {
                bail!("unknown filter `{other}` (expected perfect, multivp, nppredrrc, modal)")
            }
        }
    }
    Ok(flags)
}

enum Backend {
    Local(Box<CachingBackend<LocalIndex>>),
    Fixture(FixtureStore),
}

impl Backend {
    fn as_dyn(&self) -> &dyn CountBackend {
        match self {
            Backend::Local(b) => b.as_ref(),
            Backend::Fixture(f) => f,
        }
    }
}

fn open_backend(spec: &str, cache: Option<&Path>, no_cache: bool) -> Result<Backend> {
    if let Some(path) = spec.strip_prefix("local-index:") {
        let index = LocalIndex::load(Path::new(path)).with_context(|| {
            format!("opening index `{path}` (build it with `pleonit corpus build`)")
        })?;
        if index.is_empty() {
            eprintln!("warning: corpus index `{path}` is empty; all counts will be zero");
        }
        let default_cache = PathBuf::from(format!("{path}.cache.tsv"));
        let cache_path = if no_cache {
            None
        } else {
            Some(cache.unwrap_or(&default_cache))
        };
        let cached = CachingBackend::new(index, cache_path)?;
        return Ok(Backend::Local(Box::new(cached)));
    }
    if let Some(rest) = spec.strip_prefix("fixture:") {
        let (path, strict) = match rest.strip_suffix(",strict") {
            Some(p) => (p, true),
            None => (rest, false),
        };
        let store = FixtureStore::from_file(Path::new(path), strict)
            .with_context(|| format!("opening fixture `{path}`"))?;
        return Ok(Backend::Fixture(store));
    }
    bail!("backend must be `local-index:<path>` or `fixture:<path>[,strict]`, got `{spec}`");
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let settings = Settings::load(args.config.as_deref())?;
    let defaults = DecisionConstants::default();
    let constants = DecisionConstants {
        n_min: settings.get(args.nmin, "nmin", defaults.n_min)?,
        r_exp: settings.get(args.rexp, "rexp", defaults.r_exp)?,
        r_scarce: settings.get(args.rscarce, "rscarce", defaults.r_scarce)?,
        r_zero: settings.get(args.rzero, "rzero", defaults.r_zero)?,
    };
    constants.validate().map_err(|e| anyhow!(e))?;
    let filter_spec = settings.get(args.filters, "filters", "all".to_string())?;

    let mut pipeline = Pipeline::new();
    pipeline.filters.flags = parse_filters(&filter_spec)?;
    pipeline.evidence.constants = constants;
    pipeline.pattern3 = args.pattern3;
    pipeline.evidence.pattern3_veto = args.pattern3;

    let id_map = match &args.ids {
        Some(p) => Some(
            parse_id_map(&std::fs::read_to_string(p)?)
                .map_err(|e| anyhow!("{}: {e}", p.display()))?,
        ),
        None => None,
    };

    let mut records: Vec<InstanceRecord> = Vec::new();
    match args.system.as_str() {
        "main" => {
            let backend = open_backend(&args.backend, args.cache.as_deref(), args.no_cache)?;
            for input in &args.input {
                let text = std::fs::read_to_string(input)
                    .with_context(|| format!("reading {}", input.display()))?;
                if text.trim().is_empty() {
                    continue;
                }
                let source = input
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "input".to_string());
                let batch = pipeline
                    .classify_text(&text, &source, id_map.as_ref(), &backend.as_dyn())
                    .with_context(|| format!("classifying {}", input.display()))?;
                records.extend(batch);
            }
            if args.verbose {
                for r in &records {
                    for reading in &r.readings {
                        if let ReadingOutcome::Extraposition { evidence } = &reading.outcome {
                            for q in &evidence.queries {
                                eprintln!(
                                    "{}#{} {} [{}] {} -> {}",
                                    r.sentence_id,
                                    r.token_index,
                                    reading.matrix_verb,
                                    q.purpose,
                                    q.query,
                                    q.count
                                );
                            }
                        }
                    }
                }
            }
        }
        "pha" => {
            records = classify_pha(&args.input, id_map.as_ref())?;
        }
        other => bail!("unknown system `{other}` (expected main or pha)"),
    }

    let mut out: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    for record in &records {
        serde_json::to_writer(&mut out, record)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Token-level baseline run: no parse structure is used beyond reading the
/// leaves back out of the input trees.
fn classify_pha(
    inputs: &[PathBuf],
    id_map: Option<&HashMap<usize, String>>,
) -> Result<Vec<InstanceRecord>> {
    let cfg = PhaConfig::default();
    let table = HeadTable::default();
    let mut records = Vec::new();
    for input in inputs {
        let text = std::fs::read_to_string(input)
            .with_context(|| format!("reading {}", input.display()))?;
        if text.trim().is_empty() {
            continue;
        }
        let source = input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".to_string());
        let trees = parse_bracketed(&text).map_err(|e| anyhow!("{}: {e}", input.display()))?;
        for (n, tree) in trees.iter().enumerate() {
            let id = match id_map.and_then(|m| m.get(&(n + 1))) {
                Some(id) => id.clone(),
                None => format!("{source}:{:03}", n + 1),
            };
            let tokens = tree.tokens();
            let dep = to_dependency(tree, &table);
            for inst in find_it_instances(&dep, &id) {
                let positive = pha_classify(&tokens, inst.token_index, &cfg);
                records.push(InstanceRecord {
                    sentence_id: inst.sentence_id.clone(),
                    token_index: inst.token_index,
                    token: tokens[inst.token_index].clone(),
                    role: inst.role,
                    // The baseline is binary; positives are reported under
                    // the extraposition label and belong to the overall
                    // pleonastic category when scored.
                    label: if positive {
                        ItLabel::Extraposition
                    } else {
                        ItLabel::Referential
                    },
                    system: "pha".to_string(),
                    readings: Vec::new(),
                });
            }
        }
    }
    Ok(records)
}

fn load_predictions(path: &Path) -> Result<Vec<(String, usize, ItLabel)>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: InstanceRecord = serde_json::from_str(line)
            .with_context(|| format!("{}:{}: bad record", path.display(), n + 1))?;
        out.push((record.sentence_id, record.token_index, record.label));
    }
    Ok(out)
}

fn fmt_interval(ci: &Option<IntervalEstimate>) -> String {
    match ci {
        None => "-".to_string(),
        Some(ci) => {
            let method = match ci.method {
                IntervalMethod::BootstrapPercentile => "bootstrap",
                IntervalMethod::AdjustedWald => "adj. Wald",
            };
            format!("{:.2}-{:.2}% ({method})", ci.lo, ci.hi)
        }
    }
}

fn fmt_point(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{:.2}%", 100.0 * v),
        None => "n/a".to_string(),
    }
}

fn eval(args: EvalArgs) -> Result<()> {
    let settings = Settings::load(args.config.as_deref())?;
    let replicates: u64 = settings.get(args.bootstrap, "bootstrap", 9999)?;
    let shuffles: u64 = settings.get(args.shuffles, "shuffles", 9999)?;
    let seed: u64 = settings.get(args.seed, "seed", 0)?;
    let statistic = match args.statistic.as_str() {
        "f" | "fmeasure" => Statistic::FMeasure,
        "p" | "precision" => Statistic::Precision,
        "r" | "recall" => Statistic::Recall,
        "accuracy" => Statistic::Accuracy,
        other => bail!("unknown statistic `{other}`"),
    };

    let gold = parse_gold_tsv(&std::fs::read_to_string(&args.gold)?)
        .map_err(|e| anyhow!("{}: {e}", args.gold.display()))?;
    let preds_a = load_predictions(&args.pred)?;
    let scored_a = align(&gold, &preds_a)?;

    let categories = [
        Category::Label(ItLabel::Extraposition),
        Category::Label(ItLabel::Cleft),
        Category::Label(ItLabel::WeatherTime),
        Category::Pleonastic,
    ];

    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "# evaluation: {} instances, B = {replicates}, seed = {seed}",
        scored_a.len()
    )?;
    for category in categories {
        let counts = confusion(&scored_a, category);
        let reference = counts.tp + counts.fn_;
        let identified = counts.tp + counts.fp;
        writeln!(
            out,
            "\n{:<13} reference={reference} identified={identified} tp={}",
            category.name(),
            counts.tp
        )?;
        for stat in [Statistic::Precision, Statistic::Recall, Statistic::FMeasure] {
            let point = metric_value(&scored_a, stat, category);
            let ci = match point {
                Some(_) => bootstrap_ci(&scored_a, stat, category, replicates, seed)
                    .map_err(|e| anyhow!("{}: {e}", category.name()))?,
                None => None,
            };
            writeln!(
                out,
                "  {:<10} {:>8}   95% CI {}",
                stat.name(),
                fmt_point(point),
                fmt_interval(&ci)
            )?;
        }
    }

    if let Some(path_b) = &args.pred_b {
        let preds_b = load_predictions(path_b)?;
        let scored_b = align(&gold, &preds_b)?;
        let gold_labels: Vec<ItLabel> = scored_a.iter().map(|s| s.gold).collect();
        let a_labels: Vec<ItLabel> = scored_a.iter().map(|s| s.pred).collect();
        let b_labels: Vec<ItLabel> = scored_b.iter().map(|s| s.pred).collect();
        writeln!(
            out,
            "\n# significance, system A vs system B, R = {shuffles}"
        )?;
        for category in categories {
            let sa = metric_value(&scored_a, statistic, category).unwrap_or(0.0);
            let sb = metric_value(&scored_b, statistic, category).unwrap_or(0.0);
            let sign = if sa > sb {
                "+"
            } else if sa < sb {
                "-"
            } else {
                "="
            };
            let p = approx_randomization(
                &a_labels,
                &b_labels,
                &gold_labels,
                statistic,
                category,
                shuffles,
                seed,
            )?;
            writeln!(
                out,
                "{:<13} {}{sign} / p = {p:.3}",
                category.name(),
                statistic.name()
            )?;
        }
        match cohen_kappa(&a_labels, &b_labels) {
            Ok(k) => writeln!(out, "\nkappa(A, B) = {k:.3}")?,
            Err(e) => writeln!(out, "\nkappa(A, B) undefined: {e}")?,
        }
    }
    Ok(())
}

fn corpus(command: CorpusCommand) -> Result<()> {
    match command {
        CorpusCommand::Build { corpus, out } => {
            let text = std::fs::read_to_string(&corpus)
                .with_context(|| format!("reading {}", corpus.display()))?;
            let index = LocalIndex::build(text.lines());
            if index.is_empty() {
                eprintln!("warning: corpus `{}` has no sentences", corpus.display());
            }
            index.save(&out)?;
            println!("indexed {} sentences -> {}", index.len(), out.display());
            Ok(())
        }
        CorpusCommand::Query {
            index,
            query,
            snippets,
            dump_bundle,
            simple_forms,
            pattern3,
        } => {
            if let Some(parse_file) = dump_bundle {
                return dump_bundles(&parse_file, simple_forms, pattern3);
            }
            let index_path = index.ok_or_else(|| anyhow!("--index is required for queries"))?;
            let query_text = query.ok_or_else(|| anyhow!("missing query text"))?;
            let index = LocalIndex::load(&index_path).with_context(|| {
                format!(
                    "opening index `{}` (build it with `pleonit corpus build`)",
                    index_path.display()
                )
            })?;
            let phrase = PhraseQuery::parse_canonical(&query_text)?;
            let hits = index.search(&phrase, snippets)?;
            println!("count\t{}", hits.count);
            for s in &hits.snippets {
                println!("snippet\t{s}");
            }
            Ok(())
        }
    }
}

/// Print every query bundle the classifier would issue, without executing.
fn dump_bundles(parse_file: &Path, simple_forms: bool, pattern3: bool) -> Result<()> {
    let text = std::fs::read_to_string(parse_file)
        .with_context(|| format!("reading {}", parse_file.display()))?;
    let trees = parse_bracketed(&text).map_err(|e| anyhow!("{}: {e}", parse_file.display()))?;
    let table = HeadTable::default();
    let filters = pleonit::filters::FilterConfig::default();
    let stubs = StubSet::default();
    let mode = if simple_forms {
        EngineMode::SimpleForms
    } else {
        EngineMode::Alternation
    };
    let mut out = std::io::stdout().lock();
    for (n, tree) in trees.iter().enumerate() {
        let dep = to_dependency(tree, &table);
        for inst in find_it_instances(&dep, &format!("{:03}", n + 1)) {
            let Ok(readings) = generate_readings(&inst, &dep) else {
                continue;
            };
            for (k, reading) in readings.iter().enumerate() {
                if let pleonit::filters::SyntacticVerdict::ExtrapositionCandidate(c) =
                    pleonit::filters::evaluate_reading(reading, &dep, &filters)
                {
                    let bundle = build_bundle(&c, &dep, &stubs, mode, pattern3)?;
                    for group in &bundle.groups {
                        for q in &group.queries {
                            writeln!(
                                out,
                                "{:03}#{}.{k}\t{}\t{}",
                                n + 1,
                                inst.token_index,
                                q.purpose.name(),
                                q.phrase.canonical()
                            )?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
