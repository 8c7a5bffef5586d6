use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::corpus_io::{
    self, apply_order, check_permutation, load_corpus, read_embeddings, read_similarity_cache,
    write_similarity_cache, Corpus, FieldMapping, OrderFile,
};
use crate::diversity::{
    dcscore, dcscore_subset, ngram_diversity, prefix_curve, prefix_len, DiversityReport,
};
use crate::error::Error;
use crate::ordering::{
    default_restarts, exact_min_path, partition_stages, partition_stages_exact, run_ghs,
    ExactMethod, GhsConfig, HELD_KARP_LIMIT,
};
use crate::similarity::{build_similarity_matrix, extract_grams, SimilarityMatrix, Tokenizer};
use crate::validation::{
    check_edge_monotonicity, check_reference_matrix, check_subset_agreement, gap_study, GapConfig,
    ValidationSuite,
};

use super::{
    Cli, Command, CorpusArgs, MetricArg, OrderArgs, PartitionArgs, ScoreArgs, SimCacheArgs,
    SimilarityArgs, ValidateArgs, EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION,
};

/// Dense f64 matrices above this size get a memory warning.
const LARGE_N: usize = 20_000;

#[derive(Debug)]
pub(super) enum CliError {
    Usage(String),
    Crate(Error),
}

impl CliError {
    pub(super) fn exit_code(&self) -> i32 {
        match self {
            CliError::Crate(e) if e.is_io() => EXIT_IO,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Crate(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Crate(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Crate(Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

pub(super) fn dispatch(cli: Cli) -> CliResult<i32> {
    let command = cli.command;
    match cli.threads {
        None => execute(command),
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| usage(format!("cannot start thread pool: {e}")))?;
            pool.install(|| execute(command))
        }
    }
}

fn execute(command: Command) -> CliResult<i32> {
    match command {
        Command::Order(args) => cmd_order(&args),
        Command::Score(args) => cmd_score(&args),
        Command::Partition(args) => cmd_partition(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::SimCache(args) => cmd_sim_cache(&args),
    }
}

fn mapping(args: &CorpusArgs) -> FieldMapping {
    let mut mapping = match &args.text_field {
        Some(field) => FieldMapping::with_text_field(field.clone()),
        None => FieldMapping::default(),
    };
    mapping.id_field = args.id_field.clone();
    mapping
}

fn load_corpus_arg(args: &CorpusArgs) -> CliResult<Option<Corpus>> {
    match &args.corpus {
        Some(path) => Ok(Some(load_corpus(path, &mapping(args))?)),
        None => Ok(None),
    }
}

fn load_similarity(args: &SimilarityArgs) -> CliResult<Option<SimilarityMatrix>> {
    if let Some(path) = &args.sim {
        return Ok(Some(read_similarity_cache(path)?));
    }
    let Some(path) = &args.embeddings else {
        return Ok(None);
    };
    let embeddings = read_embeddings(path)?;
    let n = embeddings.n();
    if n > LARGE_N {
        let gib = (n as f64).powi(2) * 8.0 / f64::from(1u32 << 30);
        eprintln!(
            "warning: {n} samples need a {gib:.1} GiB dense similarity matrix; \
             run `sim-cache` once and pass --sim to avoid recomputing it"
        );
    }
    Ok(Some(build_similarity_matrix(&embeddings)?))
}

fn require_similarity(args: &SimilarityArgs) -> CliResult<SimilarityMatrix> {
    load_similarity(args)?.ok_or_else(|| usage("one of --embeddings or --sim is required"))
}

fn check_counts(corpus: Option<&Corpus>, matrix: &SimilarityMatrix) -> CliResult<()> {
    match corpus {
        Some(c) if c.len() != matrix.n() => Err(usage(format!(
            "count mismatch: corpus has {} samples, similarity source has {}",
            c.len(),
            matrix.n()
        ))),
        _ => Ok(()),
    }
}

fn write_file(path: &Path, content: &[u8]) -> CliResult<()> {
    fs::write(path, content).map_err(|e| io_err(path, e))
}

fn cmd_order(args: &OrderArgs) -> CliResult<i32> {
    if args.eta == 0 {
        return Err(usage("--eta must be at least 1"));
    }
    if args.restarts == Some(0) {
        return Err(usage("--restarts must be at least 1"));
    }
    if args.exact && args.cycle {
        return Err(usage("--exact solves open paths only; drop --cycle"));
    }
    if args.out_corpus.is_some() && args.corpus.corpus.is_none() {
        return Err(usage("--out-corpus requires --corpus"));
    }

    let corpus = load_corpus_arg(&args.corpus)?;
    let matrix = require_similarity(&args.similarity)?;
    check_counts(corpus.as_ref(), &matrix)?;
    let n = matrix.n();
    if args.exact && n > HELD_KARP_LIMIT {
        return Err(usage(format!(
            "--exact supports at most {HELD_KARP_LIMIT} samples, got {n}; use the heuristic"
        )));
    }

    let order = if args.exact {
        let order = exact_min_path(&matrix, ExactMethod::HeldKarp)?;
        eprintln!("exact minimum weight {:.6} over {n} samples", order.weight);
        order
    } else {
        let config = GhsConfig {
            eta: args.eta,
            restarts: args.restarts.unwrap_or_else(|| default_restarts(n)),
            seed: args.seed,
            start: None,
            cycle: args.cycle,
        };
        let run = run_ghs(&matrix, &config)?;
        let ws = &run.restart_weights;
        let worst = ws.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = ws.iter().sum::<f64>() / ws.len() as f64;
        eprintln!(
            "eta-ghs: weight {:.6} (restart {} of {}; restart mean {mean:.6}, worst {worst:.6})",
            run.order.weight,
            run.best_restart + 1,
            ws.len()
        );
        run.order
    };

    let mut file = order.to_order_file();
    if args.timestamp {
        file.metadata.timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }
    let reordered = match (&corpus, &args.out_corpus) {
        (Some(c), Some(_)) => Some(corpus_io::corpus::corpus_to_jsonl(&apply_order(
            c,
            &order.path,
        )?)?),
        _ => None,
    };

    write_file(&args.out, file.to_json()?.as_bytes())?;
    if let (Some(path), Some(content)) = (&args.out_corpus, reordered) {
        write_file(path, content.as_bytes())?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ScoreLine<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    #[serde(flatten)]
    report: &'a DiversityReport,
}

fn parse_ratios(ratios: &Option<Vec<f64>>) -> CliResult<Option<Vec<f64>>> {
    match ratios {
        None => Ok(None),
        Some(r) if r.is_empty() => Err(usage("--ratios is empty")),
        Some(r) => {
            if let Some(bad) = r.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
                return Err(usage(format!("ratio {bad} is not in (0, 1]")));
            }
            Ok(Some(r.clone()))
        }
    }
}

fn cmd_score(args: &ScoreArgs) -> CliResult<i32> {
    if !(args.p.is_finite() && args.p >= 0.0) {
        return Err(usage("--p must be finite and >= 0"));
    }
    if args.m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    let ratios = parse_ratios(&args.ratios)?;
    let order = args.order.as_ref().map(OrderFile::read).transpose()?;

    let points: Vec<(Option<f64>, DiversityReport)> = match args.metric {
        MetricArg::Dcscore => {
            let matrix = require_similarity(&args.similarity)?;
            let path: Vec<usize> = match &order {
                Some(o) => {
                    check_permutation(&o.indices, matrix.n())?;
                    o.indices.clone()
                }
                None => (0..matrix.n()).collect(),
            };
            match &ratios {
                None => vec![(None, dcscore(&matrix, args.p)?)],
                Some(r) => prefix_curve(&path, &matrix, args.p, r)?
                    .into_iter()
                    .map(|pt| (Some(pt.ratio), pt.report))
                    .collect(),
            }
        }
        MetricArg::Ngram => {
            let corpus = load_corpus_arg(&args.corpus)?
                .ok_or_else(|| usage("--metric ngram requires --corpus"))?;
            let corpus = match &order {
                Some(o) => apply_order(&corpus, &o.indices)?,
                None => corpus,
            };
            let tokenizer = Tokenizer {
                case_sensitive: args.case_sensitive,
            };
            let ratios = ratios.clone().unwrap_or_default();
            if ratios.is_empty() {
                let bag = extract_grams(&corpus, args.m, tokenizer)?;
                vec![(None, ngram_diversity(&bag, args.p)?)]
            } else {
                let all: Vec<usize> = (0..corpus.len()).collect();
                ratios
                    .iter()
                    .map(|&r| {
                        let k = prefix_len(r, corpus.len())?;
                        let bag = extract_grams(&corpus.select(&all[..k])?, args.m, tokenizer)?;
                        Ok((Some(r), ngram_diversity(&bag, args.p)?))
                    })
                    .collect::<Result<_, Error>>()?
            }
        }
    };

    let mut out = String::new();
    for (ratio, report) in &points {
        let line = ScoreLine {
            ratio: *ratio,
            report,
        };
        out.push_str(&serde_json::to_string(&line).map_err(Error::from)?);
        out.push('\n');
    }
    if let Some(path) = &args.csv {
        let mut csv = String::from("ratio,n,raw,adjusted\n");
        for (ratio, r) in &points {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                ratio.unwrap_or(1.0),
                r.n,
                r.raw,
                r.adjusted
            ));
        }
        write_file(path, csv.as_bytes())?;
    }
    io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| io_err(Path::new("<stdout>"), e))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct StageEntry {
    file: String,
    size: usize,
    indices: Vec<usize>,
    dcscore: Option<DiversityReport>,
}

#[derive(Serialize)]
struct Manifest {
    n: usize,
    k: usize,
    sizes: Vec<usize>,
    mode: &'static str,
    stages: Vec<StageEntry>,
}

fn cmd_partition(args: &PartitionArgs) -> CliResult<i32> {
    if !(args.p.is_finite() && args.p >= 0.0) {
        return Err(usage("--p must be finite and >= 0"));
    }
    let corpus = load_corpus_arg(&args.corpus)?.ok_or_else(|| usage("--corpus is required"))?;
    let matrix = load_similarity(&args.similarity)?;
    if let Some(m) = &matrix {
        check_counts(Some(&corpus), m)?;
    }
    let n = corpus.len();
    if args.k < 1 || args.k > n {
        return Err(usage(format!("--k must be in 1..={n}, got {}", args.k)));
    }

    let (partition, mode) = if args.exact {
        let m = matrix
            .as_ref()
            .ok_or_else(|| usage("--exact needs --embeddings or --sim"))?;
        (partition_stages_exact(m, args.k)?, "exact")
    } else {
        let order_path = args
            .order
            .as_ref()
            .ok_or_else(|| usage("--order is required unless --exact is set"))?;
        let order = OrderFile::read(order_path)?;
        check_permutation(&order.indices, n)?;
        (partition_stages(&order.indices, args.k)?, "contiguous")
    };

    let mut files = Vec::with_capacity(partition.k());
    let mut stages = Vec::with_capacity(partition.k());
    for (i, stage) in partition.stages.iter().enumerate() {
        let name = format!("stage-{:03}.jsonl", i + 1);
        let content = corpus_io::corpus::corpus_to_jsonl(&corpus.select(stage)?)?;
        let dcscore = matrix
            .as_ref()
            .map(|m| dcscore_subset(m, stage, args.p))
            .transpose()?;
        files.push((name.clone(), content));
        stages.push(StageEntry {
            file: name,
            size: stage.len(),
            indices: stage.clone(),
            dcscore,
        });
    }
    let manifest = Manifest {
        n,
        k: partition.k(),
        sizes: partition.sizes(),
        mode,
        stages,
    };
    let manifest = serde_json::to_string_pretty(&manifest).map_err(Error::from)? + "\n";

    fs::create_dir_all(&args.out_dir).map_err(|e| io_err(&args.out_dir, e))?;
    for (name, content) in files {
        write_file(&args.out_dir.join(name), content.as_bytes())?;
    }
    write_file(&args.out_dir.join("manifest.json"), manifest.as_bytes())?;
    eprintln!(
        "wrote {} stages of sizes {:?}",
        partition.k(),
        partition.sizes()
    );
    Ok(EXIT_OK)
}

const MONOTONICITY_TRIALS: usize = 1000;
const AGREEMENT_TRIALS: usize = 200;
const AGREEMENT_N: usize = 8;
const GAP_TRIALS: usize = 50;
const GAP_SIZES: [usize; 3] = [6, 8, 10];
const EXAMPLE_TOL: f64 = 1e-9;

fn cmd_validate(args: &ValidateArgs) -> CliResult<i32> {
    if args.trials == Some(0) {
        return Err(usage("--trials must be at least 1"));
    }
    let trials = |default: usize| args.trials.unwrap_or(default);

    let mut checks = vec![
        check_reference_matrix(EXAMPLE_TOL)?,
        check_edge_monotonicity(trials(MONOTONICITY_TRIALS), args.seed)?,
    ];
    for m in [2, 3] {
        checks.push(check_subset_agreement(
            AGREEMENT_N,
            m,
            trials(AGREEMENT_TRIALS),
            args.seed,
        )?);
    }
    checks.push(gap_study(&GapConfig::new(
        GAP_SIZES.to_vec(),
        trials(GAP_TRIALS),
        crate::ordering::DEFAULT_ETA,
        args.seed,
    ))?);

    for c in &checks {
        eprintln!(
            "{} {}: {}/{} trials agree, {} hard failure(s)",
            if c.passed() { "PASS" } else { "FAIL" },
            c.check_name,
            c.agreements,
            c.trials,
            c.failures.len()
                + if c.violations_are_fatal {
                    c.violations.len()
                } else {
                    0
                },
        );
    }
    let suite = ValidationSuite::new(checks);
    let json = serde_json::to_string_pretty(&suite).map_err(Error::from)? + "\n";
    match &args.out {
        Some(path) => write_file(path, json.as_bytes())?,
        None => io::stdout()
            .write_all(json.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e))?,
    }
    Ok(if suite.passed {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    })
}

fn cmd_sim_cache(args: &SimCacheArgs) -> CliResult<i32> {
    let embeddings = read_embeddings(&args.embeddings)?;
    let matrix = build_similarity_matrix(&embeddings)?;
    write_similarity_cache(&matrix, &args.out)?;
    eprintln!("cached {0}x{0} similarity matrix", matrix.n());
    Ok(EXIT_OK)
}
