use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::ordering::{
    default_restarts, eta_ghs, exact_min_path, random_order, ExactMethod, GhsConfig,
    ENUMERATION_LIMIT,
};

use super::fixtures::{random_cosine_matrix, trial_rng, DEFAULT_DIM};
use super::stats::mean;
use super::{values, ValidationReport, Violation};

/// Heuristic weights may undercut the exact optimum by rounding only.
pub const GAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GapConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub eta: usize,
    pub seed: u64,
    /// Random permutations per instance for the win-rate baseline.
    pub baseline_permutations: usize,
}

impl GapConfig {
    pub fn new(sizes: Vec<usize>, trials: usize, eta: usize, seed: u64) -> Self {
        Self {
            sizes,
            trials,
            eta,
            seed,
            baseline_permutations: 100,
        }
    }
}

struct Instance {
    heuristic: f64,
    exact: f64,
    random_mean: f64,
}

fn instance(size: usize, trial: usize, config: &GapConfig) -> Result<Instance> {
    let stream = ((size as u64) << 32) | trial as u64;
    let matrix = random_cosine_matrix(&mut trial_rng(config.seed, stream), size, DEFAULT_DIM);
    let ghs = GhsConfig::new(config.eta, default_restarts(size), config.seed ^ stream);
    let heuristic = eta_ghs(&matrix, &ghs)?.weight;
    let exact = exact_min_path(&matrix, ExactMethod::HeldKarp)?.weight;
    let baseline: Vec<f64> = (0..config.baseline_permutations as u64)
        .map(|k| {
            random_order(size, stream.wrapping_mul(1_000_003) ^ k, Some(&matrix)).map(|o| o.weight)
        })
        .collect::<Result<_>>()?;
    Ok(Instance {
        heuristic,
        exact,
        random_mean: mean(&baseline),
    })
}

/// Heuristic-minus-exact gaps on random instances; a negative gap would mean
/// the oracle is not a lower bound and fails the check.
pub fn gap_study(config: &GapConfig) -> Result<ValidationReport> {
    if config.trials == 0 {
        return Err(Error::out_of_range("trials", "must be at least 1"));
    }
    if config.eta == 0 {
        return Err(Error::out_of_range("eta", "must be at least 1"));
    }
    if config.sizes.is_empty() {
        return Err(Error::out_of_range("sizes", "list is empty"));
    }
    if let Some(&s) = config
        .sizes
        .iter()
        .find(|&&s| !(1..=ENUMERATION_LIMIT).contains(&s))
    {
        return Err(Error::out_of_range(
            "sizes",
            format!("{s} is outside 1..={ENUMERATION_LIMIT}"),
        ));
    }

    let mut report = ValidationReport::new("gap_study", true);
    for &size in &config.sizes {
        let instances: Vec<Instance> = (0..config.trials)
            .into_par_iter()
            .map(|t| instance(size, t, config))
            .collect::<Result<_>>()?;
        let mut gaps = Vec::with_capacity(instances.len());
        let mut wins = 0usize;
        for (t, inst) in instances.iter().enumerate() {
            let gap = inst.heuristic - inst.exact;
            gaps.push(gap);
            if inst.heuristic < inst.random_mean {
                wins += 1;
            }
            report.record(gap >= -GAP_TOL, || Violation {
                trial: t,
                seed: config.seed,
                description: format!("heuristic beat the exact optimum at n={size}"),
                values: values([
                    ("n", json!(size)),
                    ("heuristic", json!(inst.heuristic)),
                    ("exact", json!(inst.exact)),
                ]),
            });
        }
        report.stat(format!("n{size}_mean_gap"), mean(&gaps));
        report.stat(
            format!("n{size}_max_gap"),
            gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        );
        report.stat(format!("n{size}_wins_vs_random"), wins as f64);
        report.stat(
            format!("n{size}_win_rate_vs_random"),
            wins as f64 / config.trials as f64,
        );
    }
    Ok(report)
}
