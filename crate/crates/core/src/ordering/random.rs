use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::{edge_sum, CuriosityOrder, Provenance};

/// Seeded uniform shuffle. Without a matrix the weight is a 0.0 placeholder.
pub fn random_order(
    n: usize,
    seed: u64,
    matrix: Option<&SimilarityMatrix>,
) -> Result<CuriosityOrder> {
    if n == 0 {
        return Err(Error::out_of_range("n", "must be at least 1"));
    }
    if let Some(m) = matrix {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.n(),
            });
        }
    }
    let mut path: Vec<usize> = (0..n).collect();
    path.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(CuriosityOrder {
        weight: matrix.map_or(0.0, |m| edge_sum(&path, m, false)),
        path,
        provenance: Provenance::Random {
            seed,
            weighted: matrix.is_some(),
        },
    })
}
