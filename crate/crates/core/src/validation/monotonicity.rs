use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::diversity::softmax_trace;
use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::fixtures::{random_cosine_matrix, trial_rng, DEFAULT_DIM};
use super::{values, ValidationReport, Violation};

pub const MAX_EPSILON: f64 = 0.2;

/// One symmetric single-edge increase and its effect on the softmax trace.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityTrial {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub epsilon: f64,
    pub before: f64,
    pub after: f64,
}

impl MonotonicityTrial {
    pub fn decreased(&self) -> bool {
        self.after < self.before
    }
}

/// Raises M_ij and M_ji by `epsilon`.
pub fn raise_edge(
    matrix: &SimilarityMatrix,
    i: usize,
    j: usize,
    epsilon: f64,
) -> Result<SimilarityMatrix> {
    if i == j {
        return Err(Error::out_of_range("edge", "i and j must differ"));
    }
    let n = matrix.n();
    let mut values = matrix.values().to_vec();
    let raised = values[i * n + j] + epsilon;
    values[i * n + j] = raised;
    values[j * n + i] = raised;
    SimilarityMatrix::from_dense(n, values)
}

/// Replays trial `trial` of a run seeded with `seed`.
pub fn monotonicity_trial(seed: u64, trial: usize) -> MonotonicityTrial {
    let mut rng = trial_rng(seed, trial as u64);
    let n = rng.random_range(3..=8);
    let matrix = random_cosine_matrix(&mut rng, n, DEFAULT_DIM);
    loop {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n - 1);
        let j = if j >= i { j + 1 } else { j };
        let headroom = 1.0 - matrix.get(i, j);
        if headroom <= 0.0 {
            continue;
        }
        // (0, 0.2], capped so the entry stays <= 1
        let epsilon = (MAX_EPSILON * (1.0 - rng.random::<f64>())).min(headroom);
        let raised = raise_edge(&matrix, i, j, epsilon).expect("entry stays in range");
        return MonotonicityTrial {
            n,
            i,
            j,
            epsilon,
            before: softmax_trace(&matrix),
            after: softmax_trace(&raised),
        };
    }
}

/// Hard check: raising one off-diagonal similarity never raises the trace.
pub fn check_edge_monotonicity(trials: usize, seed: u64) -> Result<ValidationReport> {
    if trials == 0 {
        return Err(Error::out_of_range("trials", "must be at least 1"));
    }
    let outcomes: Vec<MonotonicityTrial> = (0..trials)
        .into_par_iter()
        .map(|t| monotonicity_trial(seed, t))
        .collect();

    let mut report = ValidationReport::new("edge_monotonicity", true);
    let mut largest_drop = 0.0f64;
    let mut smallest_drop = f64::INFINITY;
    for (t, o) in outcomes.iter().enumerate() {
        let drop = o.before - o.after;
        largest_drop = largest_drop.max(drop);
        smallest_drop = smallest_drop.min(drop);
        report.record(o.decreased(), || Violation {
            trial: t,
            seed,
            description: format!(
                "raising M[{}][{}] by {} did not decrease the trace",
                o.i, o.j, o.epsilon
            ),
            values: values([
                ("n", json!(o.n)),
                ("before", json!(o.before)),
                ("after", json!(o.after)),
            ]),
        });
    }
    report.stat("smallest_decrease", smallest_drop);
    report.stat("largest_decrease", largest_drop);
    Ok(report)
}
