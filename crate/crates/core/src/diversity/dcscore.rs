use crate::error::Result;
use crate::similarity::SimilarityMatrix;

use super::{check_p, DiversityParams, DiversityReport, Metric, DEFAULT_M};

/// Row-wise softmax of the matrix, row-major. Each row is shifted by its
/// maximum before exponentiation.
pub fn row_softmax(matrix: &SimilarityMatrix) -> Vec<f64> {
    let n = matrix.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = matrix.row(i);
        let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let start = out.len();
        out.extend(row.iter().map(|v| (v - max).exp()));
        let total: f64 = out[start..].iter().sum();
        for v in &mut out[start..] {
            *v /= total;
        }
    }
    out
}

/// Trace of the row-wise softmax: Σ_i e^{M_ii} / Σ_j e^{M_ij}.
pub fn softmax_trace(matrix: &SimilarityMatrix) -> f64 {
    (0..matrix.n())
        .map(|i| {
            let row = matrix.row(i);
            let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let total: f64 = row.iter().map(|v| (v - max).exp()).sum();
            (row[i] - max).exp() / total
        })
        .sum()
}

/// DCScore of a (sub)set given its similarity matrix.
pub fn dcscore(matrix: &SimilarityMatrix, p: f64) -> Result<DiversityReport> {
    check_p(p)?;
    Ok(DiversityReport::new(
        Metric::Dcscore,
        softmax_trace(matrix),
        matrix.n(),
        DiversityParams { p, m: DEFAULT_M },
    ))
}

/// DCScore of the principal submatrix on `indices`.
pub fn dcscore_subset(
    matrix: &SimilarityMatrix,
    indices: &[usize],
    p: f64,
) -> Result<DiversityReport> {
    dcscore(&matrix.submatrix(indices)?, p)
}
