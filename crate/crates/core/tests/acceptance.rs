//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use curiosity_order::corpus_io::{
    read_embeddings, write_embeddings, EmbeddingMatrix, OrderFile, OrderMetadata,
};
use curiosity_order::diversity::{prefix_curve, softmax_trace};
use curiosity_order::ordering::{exact_min_path, random_order, ExactMethod};
use curiosity_order::similarity::SimilarityMatrix;
use curiosity_order::validation::check_edge_monotonicity;
use curiosity_order::validation::fixtures::{
    clustered_unit_vectors, example_matrix, trial_rng, ClusterSpec, COMPARISON_CURVE,
    COMPARISON_ORDER, EXAMPLE_MIN_WEIGHT, LISTED_OPTIMAL_CURVE, LISTED_OPTIMAL_ORDER,
};
use curiosity_order::validation::gap::{gap_study, GapConfig};
use curiosity_order::validation::prefix_advantage::{
    check_prefix_advantage, PrefixAdvantageConfig,
};
use curiosity_order::validation::reference::check_reference_matrix;
use curiosity_order::validation::subset_agreement::check_subset_agreement;
use rand::Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

fn reference_exact() -> Outcome {
    let start = Instant::now();
    let order = exact_min_path(&example_matrix(), ExactMethod::Enumerate).unwrap();
    let report = check_reference_matrix(1e-9).unwrap();
    let elapsed = start.elapsed();
    let erratum = report.notes.iter().any(|n| n.contains("erratum"));
    outcome(
        (order.weight - EXAMPLE_MIN_WEIGHT).abs() <= 1e-9
            && report.passed()
            && erratum
            && within(elapsed, 1),
        format!(
            "weight {:.12} path {:?}, erratum noted: {erratum}, {elapsed:.2?}",
            order.weight, order.path
        ),
    )
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let m = example_matrix();
    let ratios = [0.2, 0.4, 0.6, 0.8, 1.0];
    let mut ok = true;
    let mut rows = Vec::new();
    for (order, want) in [
        (&LISTED_OPTIMAL_ORDER, &LISTED_OPTIMAL_CURVE),
        (&COMPARISON_ORDER, &COMPARISON_CURVE),
    ] {
        let got: Vec<f64> = prefix_curve(order, &m, 1.0, &ratios)
            .unwrap()
            .iter()
            .map(|pt| pt.report.adjusted)
            .collect();
        ok &= got
            .iter()
            .zip(want.iter())
            .all(|(g, w)| (g - w).abs() <= 0.01);
        rows.push(
            got.iter()
                .map(|v| format!("{v:.2}"))
                .collect::<Vec<_>>()
                .join(" "),
        );
    }
    let elapsed = start.elapsed();
    outcome(
        ok && within(elapsed, 1),
        format!("P* [{}], P1 [{}], {elapsed:.2?}", rows[0], rows[1]),
    )
}

fn oracle_dominance() -> Outcome {
    let start = Instant::now();
    let report = gap_study(&GapConfig::new(vec![6, 8, 10], 50, 3, 42)).unwrap();
    let elapsed = start.elapsed();
    let mut ok = report.violations.is_empty();
    let mut wins = Vec::new();
    for n in [6, 8, 10] {
        let w = report.statistics[&format!("n{n}_wins_vs_random")];
        ok &= w >= 45.0;
        wins.push(format!(
            "n={n} wins {w}/50 mean gap {:.4}",
            report.statistics[&format!("n{n}_mean_gap")]
        ));
    }
    outcome(
        ok && within(elapsed, 30),
        format!(
            "{} violations; {}; {elapsed:.2?}",
            report.violations.len(),
            wins.join(", ")
        ),
    )
}

fn edge_monotonicity() -> Outcome {
    let start = Instant::now();
    let report = check_edge_monotonicity(1000, 42).unwrap();
    let before = softmax_trace(&SimilarityMatrix::constant(2, 0.5).unwrap());
    let after = softmax_trace(&SimilarityMatrix::constant(2, 0.9).unwrap());
    let elapsed = start.elapsed();
    let hand = (before - 1.2449).abs() <= 1e-3 && (after - 1.0500).abs() <= 1e-3;
    outcome(
        report.passed() && report.violations.is_empty() && hand && within(elapsed, 10),
        format!(
            "{}/{} trials decrease, hand case {before:.4} -> {after:.4}, {elapsed:.2?}",
            report.agreements, report.trials
        ),
    )
}

fn subset_agreement() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [2, 3] {
        let report = check_subset_agreement(8, m, 200, 42).unwrap();
        ok &= report.passed() && report.trials == 200;
        parts.push(format!(
            "m={m} agreement {:.3} min rank corr {:.3}",
            report.statistics["agreement_rate"], report.statistics["min_rank_correlation"]
        ));
    }
    let elapsed = start.elapsed();
    outcome(
        ok && within(elapsed, 60),
        format!("{}, {elapsed:.2?}", parts.join(", ")),
    )
}

fn run_order(
    dir: &Path,
    emb: &Path,
    corpus: &Path,
    threads: &str,
    tag: &str,
) -> (Vec<u8>, Vec<u8>) {
    let out = dir.join(format!("order-{tag}.json"));
    let out_corpus = dir.join(format!("ordered-{tag}.jsonl"));
    let status = Command::new(env!("CARGO_BIN_EXE_curiosity-order"))
        .env_remove("CURIOSITY_SEED")
        .env_remove("CURIOSITY_THREADS")
        .args(["--threads", threads, "order", "--embeddings"])
        .arg(emb)
        .arg("--corpus")
        .arg(corpus)
        .arg("--out")
        .arg(&out)
        .arg("--out-corpus")
        .arg(&out_corpus)
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    (fs::read(out).unwrap(), fs::read(out_corpus).unwrap())
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let spec = ClusterSpec {
        points: 500,
        ..ClusterSpec::default()
    };
    let (emb, _) = clustered_unit_vectors(&mut trial_rng(7, 0), &spec);
    let emb_path = dir.path().join("emb.bin");
    write_embeddings(&emb, &emb_path).unwrap();
    let corpus_path = dir.path().join("corpus.jsonl");
    let body: String = (0..500)
        .map(|i| format!("{{\"id\":\"s{i}\",\"problem\":\"problem number {i}\"}}\n"))
        .collect();
    fs::write(&corpus_path, body).unwrap();

    let runs = [("1", "a"), ("1", "b"), ("4", "c"), ("4", "d")]
        .map(|(threads, tag)| run_order(dir.path(), &emb_path, &corpus_path, threads, tag));
    let elapsed = start.elapsed();
    let identical = runs.iter().all(|r| *r == runs[0]);
    outcome(
        identical,
        format!("4 runs (threads 1,1,4,4) byte-identical: {identical}, {elapsed:.2?}"),
    )
}

fn prefix_advantage() -> Outcome {
    let start = Instant::now();
    let config = PrefixAdvantageConfig::default();
    let report = check_prefix_advantage(&config).unwrap();
    let elapsed = start.elapsed();
    let parts: Vec<String> = config
        .ratios
        .iter()
        .map(|r| {
            format!(
                "{r}: {:.3} vs {:.3}",
                report.statistics[&format!("ratio_{r}_ordered")],
                report.statistics[&format!("ratio_{r}_shuffled_mean")]
            )
        })
        .collect();
    outcome(
        report.passed() && within(elapsed, 30),
        format!(
            "ordered vs shuffled mean {}, {elapsed:.2?}",
            parts.join(", ")
        ),
    )
}

fn round_trips() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = trial_rng(2024, 0);
    let mut identical = 0;
    for k in 0..100 {
        let n = rng.random_range(1..40);
        let d = rng.random_range(1..24);
        let values: Vec<f32> = (0..n * d)
            .map(|_| {
                let v: f32 = rng.random_range(-10.0..10.0);
                if v.abs() < 1e-3 {
                    1.0
                } else {
                    v
                }
            })
            .collect();
        let emb = EmbeddingMatrix::new(n, d, values).unwrap();
        let emb_path = dir.path().join(format!("e{k}.bin"));
        write_embeddings(&emb, &emb_path).unwrap();
        let emb_back = read_embeddings(&emb_path).unwrap();

        let mut order = random_order(n, k, None).unwrap().to_order_file();
        order.weight = rng.random_range(-1e3..1e3);
        order.metadata = OrderMetadata {
            eta: Some(rng.random_range(1..8)),
            seed: Some(rng.random()),
            ..order.metadata
        };
        let order_path = dir.path().join(format!("o{k}.json"));
        order.write(&order_path).unwrap();
        let order_back = OrderFile::read(&order_path).unwrap();

        let bits_equal = emb
            .values()
            .iter()
            .zip(emb_back.values())
            .all(|(a, b)| a.to_bits() == b.to_bits());
        if emb_back.n() == n
            && emb_back.d() == d
            && bits_equal
            && order_back == order
            && order_back.weight.to_bits() == order.weight.to_bits()
        {
            identical += 1;
        }
    }
    outcome(identical == 100, format!("{identical}/100 identical"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("reference matrix exact minimum", reference_exact),
        ("reference prefix-curve reproduction", table_reproduction),
        ("oracle dominance", oracle_dominance),
        ("edge monotonicity", edge_monotonicity),
        ("subset agreement report", subset_agreement),
        ("determinism", determinism),
        ("prefix-diversity advantage", prefix_advantage),
        ("format round-trips", round_trips),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = check();
        if !result.passed {
            failed += 1;
        }
        println!(
            "{} {name}: {}",
            if result.passed { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
