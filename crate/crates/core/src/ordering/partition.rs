use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::subset::{select_from, SubsetMode};

/// Upper bound on n for [`partition_stages_exact`].
pub const EXACT_STAGE_LIMIT: usize = 20;

/// k disjoint training stages covering every index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagePartition {
    pub stages: Vec<Vec<usize>>,
}

impl StagePartition {
    pub fn k(&self) -> usize {
        self.stages.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.stages.iter().map(Vec::len).collect()
    }
}

fn stage_sizes(n: usize, k: usize) -> Result<Vec<usize>> {
    if k < 1 || k > n {
        return Err(Error::out_of_range(
            "k",
            format!("stage count {k} must be in 1..={n}"),
        ));
    }
    let (base, extra) = (n / k, n % k);
    Ok((0..k).map(|i| base + usize::from(i < extra)).collect())
}

/// Cuts `path` into k contiguous blocks; earlier blocks take the remainder.
pub fn partition_stages(path: &[usize], k: usize) -> Result<StagePartition> {
    let sizes = stage_sizes(path.len(), k)?;
    let mut stages = Vec::with_capacity(k);
    let mut rest = path;
    for size in sizes {
        let (head, tail) = rest.split_at(size);
        stages.push(head.to_vec());
        rest = tail;
    }
    Ok(StagePartition { stages })
}

/// Validation-only alternative: stage i is the exact minimum-pairwise-sum
/// subset of the indices not used by earlier stages.
pub fn partition_stages_exact(matrix: &SimilarityMatrix, k: usize) -> Result<StagePartition> {
    let n = matrix.n();
    if n > EXACT_STAGE_LIMIT {
        return Err(Error::out_of_range(
            "n",
            format!("exact stages support at most {EXACT_STAGE_LIMIT} nodes, got {n}"),
        ));
    }
    let sizes = stage_sizes(n, k)?;
    let mut pool: Vec<usize> = (0..n).collect();
    let mut stages = Vec::with_capacity(k);
    for size in sizes {
        let stage = select_from(matrix, &pool, size, SubsetMode::Exact)?;
        pool.retain(|i| !stage.contains(i));
        stages.push(stage);
    }
    Ok(StagePartition { stages })
}
