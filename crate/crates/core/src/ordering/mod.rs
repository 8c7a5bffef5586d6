//! Hamiltonian curiosity orders.
//!
//! An order is a permutation of sample indices; its weight is the sum of the
//! similarities of consecutive samples (an open path of n−1 edges). The
//! curiosity order is the permutation of minimum weight. Finding it is
//! NP-hard, so [`eta_ghs`] approximates it with randomized greedy restarts
//! and [`exact_min_path`] solves small instances exactly for validation.

pub mod exact;
pub mod ghs;
pub mod partition;
pub mod random;
pub mod subset;

pub use exact::{exact_min_path, ExactMethod, ENUMERATION_LIMIT, HELD_KARP_LIMIT};
pub use ghs::{default_restarts, eta_ghs, run_ghs, GhsConfig, GhsRun, DEFAULT_ETA};
pub use partition::{partition_stages, partition_stages_exact, StagePartition};
pub use random::random_order;
pub use subset::{pairwise_sum, select_diverse_subset, SubsetMode};

use crate::corpus_io::{check_permutation, OrderFile, OrderMetadata};
use crate::error::Result;
use crate::similarity::SimilarityMatrix;

/// Where an order came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Exact(ExactMethod),
    Greedy {
        eta: usize,
        restarts: usize,
        seed: u64,
        cycle: bool,
    },
    Random {
        seed: u64,
        weighted: bool,
    },
    /// Read from an order file.
    Supplied(OrderMetadata),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CuriosityOrder {
    pub path: Vec<usize>,
    pub weight: f64,
    pub provenance: Provenance,
}

impl CuriosityOrder {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Wraps an order file after checking it against `matrix`.
    pub fn from_order_file(file: OrderFile, matrix: &SimilarityMatrix) -> Result<Self> {
        file.verify(matrix)?;
        Ok(Self {
            path: file.indices,
            weight: file.weight,
            provenance: Provenance::Supplied(file.metadata),
        })
    }

    pub fn to_order_file(&self) -> OrderFile {
        let metadata = match &self.provenance {
            Provenance::Exact(method) => OrderMetadata::new(method.name()),
            Provenance::Greedy {
                eta,
                restarts,
                seed,
                cycle,
            } => OrderMetadata {
                eta: Some(*eta),
                restarts: Some(*restarts),
                seed: Some(*seed),
                cycle: *cycle,
                ..OrderMetadata::new("eta-ghs")
            },
            Provenance::Random { seed, weighted } => OrderMetadata {
                seed: Some(*seed),
                weight_unset: !weighted,
                ..OrderMetadata::new("random")
            },
            Provenance::Supplied(meta) => meta.clone(),
        };
        OrderFile {
            indices: self.path.clone(),
            weight: self.weight,
            metadata,
        }
    }
}

/// Edge sum along `path` without validation. `cycle` adds the closing edge.
pub fn edge_sum(path: &[usize], matrix: &SimilarityMatrix, cycle: bool) -> f64 {
    let mut total: f64 = path.windows(2).map(|w| matrix.get(w[0], w[1])).sum();
    if cycle && path.len() > 2 {
        total += matrix.get(path[path.len() - 1], path[0]);
    }
    total
}

/// Cumulative similarity of an open path: Σ M[p_k][p_{k+1}] over n−1 edges.
pub fn path_weight(path: &[usize], matrix: &SimilarityMatrix) -> Result<f64> {
    check_permutation(path, matrix.n())?;
    Ok(edge_sum(path, matrix, false))
}

/// Like [`path_weight`] but closes the path into a cycle.
pub fn cycle_weight(path: &[usize], matrix: &SimilarityMatrix) -> Result<f64> {
    check_permutation(path, matrix.n())?;
    Ok(edge_sum(path, matrix, true))
}
