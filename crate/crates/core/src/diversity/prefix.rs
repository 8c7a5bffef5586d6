use serde::{Deserialize, Serialize};

use crate::corpus_io::check_permutation;
use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::{dcscore_subset, DiversityReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefixPoint {
    pub ratio: f64,
    pub report: DiversityReport,
}

/// ⌈ratio · n⌉, ignoring rounding noise below 1e-9 (so 0.6 · 5 is 3).
pub fn prefix_len(ratio: f64, n: usize) -> Result<usize> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::out_of_range(
            "ratio",
            format!("{ratio} is not in (0, 1]"),
        ));
    }
    let k = (ratio * n as f64 - 1e-9).ceil() as usize;
    Ok(k.clamp(1, n))
}

/// DCScore of the first ⌈r·n⌉ samples of `path`, for every ratio r.
pub fn prefix_curve(
    path: &[usize],
    matrix: &SimilarityMatrix,
    p: f64,
    ratios: &[f64],
) -> Result<Vec<PrefixPoint>> {
    if ratios.is_empty() {
        return Err(Error::out_of_range("ratios", "list is empty"));
    }
    check_permutation(path, matrix.n())?;
    ratios
        .iter()
        .map(|&ratio| {
            let k = prefix_len(ratio, path.len())?;
            Ok(PrefixPoint {
                ratio,
                report: dcscore_subset(matrix, &path[..k], p)?,
            })
        })
        .collect()
}
