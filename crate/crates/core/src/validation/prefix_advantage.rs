use serde_json::json;

use crate::diversity::{dcscore_subset, prefix_len, DEFAULT_P};
use crate::error::{Error, Result};
use crate::ordering::{eta_ghs, random_order, GhsConfig};
use crate::similarity::build_similarity_matrix;

use super::fixtures::{clustered_unit_vectors, trial_rng, ClusterSpec};
use super::stats::mean;
use super::{values, ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq)]
pub struct PrefixAdvantageConfig {
    pub clusters: ClusterSpec,
    pub ratios: Vec<f64>,
    pub shuffles: usize,
    pub p: f64,
    pub seed: u64,
}

impl Default for PrefixAdvantageConfig {
    fn default() -> Self {
        Self {
            clusters: ClusterSpec::default(),
            ratios: vec![0.1, 0.25, 0.5],
            shuffles: 20,
            p: DEFAULT_P,
            seed: 42,
        }
    }
}

/// Compares the adjusted DCScore of curiosity-order prefixes with the mean
/// over seeded random shuffles, one trial per ratio.
pub fn check_prefix_advantage(config: &PrefixAdvantageConfig) -> Result<ValidationReport> {
    if config.ratios.is_empty() {
        return Err(Error::out_of_range("ratios", "list is empty"));
    }
    if config.shuffles == 0 {
        return Err(Error::out_of_range("shuffles", "must be at least 1"));
    }
    let (embeddings, _) = clustered_unit_vectors(&mut trial_rng(config.seed, 0), &config.clusters);
    let matrix = build_similarity_matrix(&embeddings)?;
    let n = matrix.n();
    let order = eta_ghs(&matrix, &GhsConfig::for_size(n, config.seed))?;
    let shuffles: Vec<Vec<usize>> = (1..=config.shuffles as u64)
        .map(|k| random_order(n, config.seed.wrapping_add(k), None).map(|o| o.path))
        .collect::<Result<_>>()?;

    let mut report = ValidationReport::new("prefix_advantage", true);
    report.stat("order_weight", order.weight);
    for (t, &ratio) in config.ratios.iter().enumerate() {
        let k = prefix_len(ratio, n)?;
        let ordered = dcscore_subset(&matrix, &order.path[..k], config.p)?.adjusted;
        let baseline: Vec<f64> = shuffles
            .iter()
            .map(|s| dcscore_subset(&matrix, &s[..k], config.p).map(|r| r.adjusted))
            .collect::<Result<_>>()?;
        let baseline = mean(&baseline);
        report.stat(format!("ratio_{ratio}_ordered"), ordered);
        report.stat(format!("ratio_{ratio}_shuffled_mean"), baseline);
        report.record(ordered > baseline, || Violation {
            trial: t,
            seed: config.seed,
            description: format!("prefix ratio {ratio} does not beat the shuffled mean"),
            values: values([
                ("ordered", json!(ordered)),
                ("shuffled_mean", json!(baseline)),
            ]),
        });
    }
    Ok(report)
}
