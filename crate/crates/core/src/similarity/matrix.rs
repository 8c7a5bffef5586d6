use rayon::prelude::*;

use crate::corpus_io::embeddings::{row_norm, EmbeddingMatrix, MIN_ROW_NORM};
use crate::error::{Error, Result};

/// Allowed asymmetry |M_ij − M_ji|.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Allowed excursion of entries beyond [−1, 1].
pub const RANGE_TOL: f64 = 1e-9;
/// Diagonal entries within this of 1.0 are accepted and pinned to 1.0.
pub const DIAGONAL_TOL: f64 = 1e-6;

/// Dense, symmetric n×n cosine similarity matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    /// Validates a row-major n×n buffer.
    pub fn from_dense(n: usize, mut values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix is empty".into()));
        }
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: values.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if i != j && v.abs() > 1.0 + RANGE_TOL {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {v} outside [-1, 1]"
                    )));
                }
                if j > i && (v - values[j * n + i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric at ({i}, {j}): {v} vs {}",
                        values[j * n + i]
                    )));
                }
            }
            let diag = &mut values[i * n + i];
            if (*diag - 1.0).abs() > DIAGONAL_TOL {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry {i} is {diag}, expected 1"
                )));
            }
            *diag = 1.0;
        }
        Ok(Self { n, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::from_dense(n, values)
    }

    /// Matrix with every off-diagonal entry equal to `c`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        let values = (0..n * n)
            .map(|k| if k / n == k % n { 1.0 } else { c })
            .collect();
        Self::from_dense(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Principal submatrix on `indices`, in that order.
    pub fn submatrix(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidMatrix("matrix is empty".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::out_of_range(
                "index",
                format!("{bad} >= matrix size {}", self.n),
            ));
        }
        let m = indices.len();
        let mut values = Vec::with_capacity(m * m);
        for &i in indices {
            let row = self.row(i);
            values.extend(indices.iter().map(|&j| row[j]));
        }
        Ok(Self { n: m, values })
    }

    /// Sum of all off-diagonal entries (each unordered pair counted twice).
    pub fn off_diagonal_sum(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..self.n {
            for (j, v) in self.row(i).iter().enumerate() {
                if i != j {
                    total += v;
                }
            }
        }
        total
    }
}

/// Cosine similarity, clamped to [−1, 1].
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nu <= MIN_ROW_NORM {
        return Err(Error::ZeroNorm { row: 0 });
    }
    if nv <= MIN_ROW_NORM {
        return Err(Error::ZeroNorm { row: 1 });
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

#[inline]
fn cosine_f32(u: &[f32], v: &[f32], nu: f64, nv: f64) -> f64 {
    let dot: f64 = u
        .iter()
        .zip(v)
        .map(|(&a, &b)| f64::from(a) * f64::from(b))
        .sum();
    (dot / (nu * nv)).clamp(-1.0, 1.0)
}

/// Pairwise cosine similarities of the embedding rows.
///
/// Rows are computed in parallel. Each entry is a pure function of its two
/// rows, and the dot product and norm product are commutative, so the result
/// is symmetric bit for bit and independent of the thread schedule.
pub fn build_similarity_matrix(embeddings: &EmbeddingMatrix) -> Result<SimilarityMatrix> {
    let n = embeddings.n();
    let norms: Vec<f64> = embeddings.rows().map(row_norm).collect();
    if let Some(row) = norms.iter().position(|&v| v <= MIN_ROW_NORM) {
        return Err(Error::ZeroNorm { row });
    }
    let mut values = vec![0.0; n * n];
    values.par_chunks_mut(n).enumerate().for_each(|(i, out)| {
        let ei = embeddings.row(i);
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = if i == j {
                1.0
            } else {
                cosine_f32(ei, embeddings.row(j), norms[i], norms[j])
            };
        }
    });
    Ok(SimilarityMatrix { n, values })
}
