//! Hard-coded matrices and seeded random instances.
//!
//! Random instances are always built from unit vectors, so they are genuine
//! cosine matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::corpus_io::EmbeddingMatrix;
use crate::similarity::{build_similarity_matrix, SimilarityMatrix};

/// Dimension used for random unit-vector instances.
pub const DEFAULT_DIM: usize = 16;

/// The five-sample worked example. It is not positive semidefinite (smallest
/// eigenvalue ≈ −0.365), so no set of embeddings produces it exactly.
#[rustfmt::skip]
pub const EXAMPLE_ROWS: [[f64; 5]; 5] = [
    [ 1.0,  0.5, -0.4,  0.7,  0.8],
    [ 0.5,  1.0, -0.8,  0.9,  0.3],
    [-0.4, -0.8,  1.0,  0.2, -0.3],
    [ 0.7,  0.9,  0.2,  1.0,  0.4],
    [ 0.8,  0.3, -0.3,  0.4,  1.0],
];

/// Minimum open-path weight of the example matrix.
pub const EXAMPLE_MIN_WEIGHT: f64 = -0.5;

/// The order listed as optimal, x2 → x3 → x5 → x4 → x1 (weight 0.0 under
/// the example matrix; see [`EXAMPLE_MIN_WEIGHT`]).
pub const LISTED_OPTIMAL_ORDER: [usize; 5] = [1, 2, 4, 3, 0];
/// The comparison order x1 → x2 → x5 → x4 → x3.
pub const COMPARISON_ORDER: [usize; 5] = [0, 1, 4, 3, 2];

/// Prefix DCScores (p = 1) of the two orders above, prefixes 1..=5.
pub const LISTED_OPTIMAL_CURVE: [f64; 5] = [1.00, 3.43, 5.59, 6.78, 8.35];
pub const COMPARISON_CURVE: [f64; 5] = [1.00, 2.49, 3.96, 5.24, 8.35];

pub fn example_matrix() -> SimilarityMatrix {
    let rows: Vec<Vec<f64>> = EXAMPLE_ROWS.iter().map(|r| r.to_vec()).collect();
    SimilarityMatrix::from_rows(&rows).expect("example matrix is valid")
}

/// Generator for trial `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn unit_gaussian<R: Rng>(rng: &mut R, d: usize) -> Vec<f32> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|x| (x / norm) as f32).collect();
        }
    }
}

/// n isotropic random unit vectors in d dimensions.
pub fn random_unit_vectors<R: Rng>(rng: &mut R, n: usize, d: usize) -> EmbeddingMatrix {
    let values = (0..n).flat_map(|_| unit_gaussian(rng, d)).collect();
    EmbeddingMatrix::new(n, d, values).expect("unit vectors are valid")
}

pub fn random_cosine_matrix<R: Rng>(rng: &mut R, n: usize, d: usize) -> SimilarityMatrix {
    build_similarity_matrix(&random_unit_vectors(rng, n, d)).expect("valid embeddings")
}

/// Mixture of isotropic Gaussian clusters, projected onto the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSpec {
    pub points: usize,
    pub clusters: usize,
    pub dim: usize,
    /// Per-point noise norm relative to the unit-norm cluster centre.
    pub spread: f64,
}

impl Default for ClusterSpec {
    fn default() -> Self {
        Self {
            points: 200,
            clusters: 5,
            dim: DEFAULT_DIM,
            spread: 1.0,
        }
    }
}

/// Points are assigned to clusters round-robin, then normalized. Returns the
/// embeddings and each point's cluster label.
pub fn clustered_unit_vectors<R: Rng>(
    rng: &mut R,
    spec: &ClusterSpec,
) -> (EmbeddingMatrix, Vec<usize>) {
    let centres: Vec<Vec<f32>> = (0..spec.clusters)
        .map(|_| unit_gaussian(rng, spec.dim))
        .collect();
    let scale = spec.spread / (spec.dim as f64).sqrt();
    let mut values = Vec::with_capacity(spec.points * spec.dim);
    let mut labels = Vec::with_capacity(spec.points);
    for k in 0..spec.points {
        let c = k % spec.clusters;
        loop {
            let v: Vec<f64> = centres[c]
                .iter()
                .map(|&x| f64::from(x) + scale * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                values.extend(v.iter().map(|x| (x / norm) as f32));
                break;
            }
        }
        labels.push(c);
    }
    let e = EmbeddingMatrix::new(spec.points, spec.dim, values).expect("unit vectors are valid");
    (e, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::path_weight;

    #[test]
    fn example_is_valid() {
        let m = example_matrix();
        assert_eq!(m.n(), 5);
        assert_eq!(m.get(1, 2), -0.8);
    }

    #[test]
    fn listed_order_weighs_zero() {
        let w = path_weight(&LISTED_OPTIMAL_ORDER, &example_matrix()).unwrap();
        assert!(w.abs() < 1e-12);
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = random_cosine_matrix(&mut trial_rng(1, 2), 6, 8);
        let b = random_cosine_matrix(&mut trial_rng(1, 2), 6, 8);
        let c = random_cosine_matrix(&mut trial_rng(1, 3), 6, 8);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn cluster_labels_round_robin() {
        let (e, labels) = clustered_unit_vectors(&mut trial_rng(0, 0), &ClusterSpec::default());
        assert_eq!(e.n(), 200);
        assert_eq!(labels.iter().filter(|&&l| l == 3).count(), 40);
        for row in e.rows() {
            let norm: f64 = row.iter().map(|&x| f64::from(x) * f64::from(x)).sum();
            assert!((norm - 1.0).abs() < 1e-5);
        }
    }
}
