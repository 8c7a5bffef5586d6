//! Does the subset of maximum DCScore coincide with the subset of minimum
//! pairwise similarity?
//!
//! Single-edge monotonicity does not imply that the two optimizers coincide
//! over all subsets, so agreement is only reported. The hard assertion is
//! weaker: across all subsets of a trial, DCScore and the negated pairwise
//! sum are positively rank-correlated.

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::json;

use crate::diversity::softmax_trace;
use crate::error::{Error, Result};
use crate::ordering::exact::TIE_TOL;
use crate::ordering::pairwise_sum;
use crate::ordering::subset::binomial;
use crate::similarity::SimilarityMatrix;

use super::fixtures::{random_cosine_matrix, trial_rng, DEFAULT_DIM};
use super::stats::{mean, spearman};
use super::{values, ValidationReport, Violation};

/// Per-trial cap on C(n, m).
pub const SUBSET_BUDGET: u128 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetAgreementTrial {
    /// Lexicographically first subset of minimum pairwise sum.
    pub argmin_pairwise: Vec<usize>,
    /// Lexicographically first subset of maximum raw DCScore.
    pub argmax_dcscore: Vec<usize>,
    pub min_pairwise: f64,
    pub max_dcscore: f64,
    /// Spearman correlation of (−pairwise sum, DCScore) over all subsets;
    /// `None` when one side is constant.
    pub rank_correlation: Option<f64>,
    pub subsets: usize,
}

impl SubsetAgreementTrial {
    pub fn agrees(&self) -> bool {
        self.argmin_pairwise == self.argmax_dcscore
    }

    /// Every subset has the same score, or there is only one subset.
    pub fn degenerate(&self) -> bool {
        self.rank_correlation.is_none()
    }
}

pub fn subset_agreement_on_matrix(
    matrix: &SimilarityMatrix,
    m: usize,
) -> Result<SubsetAgreementTrial> {
    let n = matrix.n();
    if m < 1 || m > n {
        return Err(Error::out_of_range("m", format!("{m} must be in 1..={n}")));
    }
    let count = binomial(n, m);
    if count > SUBSET_BUDGET {
        return Err(Error::out_of_range(
            "m",
            format!("C({n}, {m}) = {count} exceeds the enumeration budget of {SUBSET_BUDGET}"),
        ));
    }

    let subsets: Vec<Vec<usize>> = (0..n).combinations(m).collect();
    let mut neg_sums = Vec::with_capacity(subsets.len());
    let mut scores = Vec::with_capacity(subsets.len());
    for s in &subsets {
        neg_sums.push(-pairwise_sum(matrix, s));
        scores.push(softmax_trace(&matrix.submatrix(s)?));
    }

    let first_within = |xs: &[f64]| {
        let best = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let k = xs.iter().position(|&x| x >= best - TIE_TOL).unwrap();
        (k, best)
    };
    let (k_sum, best_neg_sum) = first_within(&neg_sums);
    let (k_dcs, best_dcs) = first_within(&scores);
    let constant = |xs: &[f64]| {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo <= TIE_TOL
    };
    let rank_correlation = if constant(&neg_sums) || constant(&scores) {
        None
    } else {
        spearman(&neg_sums, &scores)
    };

    Ok(SubsetAgreementTrial {
        argmin_pairwise: subsets[k_sum].clone(),
        argmax_dcscore: subsets[k_dcs].clone(),
        min_pairwise: -best_neg_sum,
        max_dcscore: best_dcs,
        rank_correlation,
        subsets: subsets.len(),
    })
}

/// `trials` random unit-vector instances of size `n`, all size-`m` subsets
/// each.
pub fn check_subset_agreement(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<ValidationReport> {
    if trials == 0 {
        return Err(Error::out_of_range("trials", "must be at least 1"));
    }
    if n == 0 {
        return Err(Error::out_of_range("n", "must be at least 1"));
    }
    // surface budget errors before spawning work
    subset_agreement_on_matrix(&SimilarityMatrix::constant(n, 0.0)?, m)?;

    let outcomes: Vec<SubsetAgreementTrial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let matrix = random_cosine_matrix(&mut trial_rng(seed, t as u64), n, DEFAULT_DIM);
            subset_agreement_on_matrix(&matrix, m)
        })
        .collect::<Result<_>>()?;

    let mut report = ValidationReport::new("subset_agreement", false);
    report.stat("n", n as f64);
    report.stat("m", m as f64);
    let mut correlations = Vec::new();
    let mut degenerate = 0usize;
    for (t, o) in outcomes.iter().enumerate() {
        report.record(o.agrees(), || Violation {
            trial: t,
            seed,
            description: "argmax DCScore differs from argmin pairwise similarity".into(),
            values: values([
                ("argmin_pairwise", json!(o.argmin_pairwise)),
                ("argmax_dcscore", json!(o.argmax_dcscore)),
                ("min_pairwise", json!(o.min_pairwise)),
                ("max_dcscore", json!(o.max_dcscore)),
            ]),
        });
        match o.rank_correlation {
            None => degenerate += 1,
            Some(rho) => {
                correlations.push(rho);
                if rho <= 0.0 {
                    report.failures.push(Violation {
                        trial: t,
                        seed,
                        description: "non-positive rank correlation".into(),
                        values: values([("rank_correlation", json!(rho))]),
                    });
                }
            }
        }
    }
    report.stat("agreement_rate", report.agreements as f64 / trials as f64);
    report.stat("degenerate_trials", degenerate as f64);
    if !correlations.is_empty() {
        report.stat("mean_rank_correlation", mean(&correlations));
        report.stat(
            "min_rank_correlation",
            correlations.iter().copied().fold(f64::INFINITY, f64::min),
        );
    }
    if degenerate > 0 {
        report.notes.push(format!(
            "{degenerate} trial(s) had constant scores across subsets; rank correlation is undefined there"
        ));
    }
    Ok(report)
}
