use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

/// Stored weights must match a recomputation within this.
pub const WEIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderMetadata {
    /// "eta-ghs", "exact-enumerate", "exact-held-karp", "random", ...
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Unix seconds. Left empty unless requested, so identical runs produce
    /// identical files.
    #[serde(default)]
    pub timestamp: Option<u64>,
    /// The weight includes the closing edge back to the first node.
    #[serde(default)]
    pub cycle: bool,
    /// The weight is a 0.0 placeholder (no similarity source was given).
    #[serde(default)]
    pub weight_unset: bool,
}

impl OrderMetadata {
    pub fn new(generator: impl Into<String>) -> Self {
        Self {
            generator: generator.into(),
            eta: None,
            restarts: None,
            seed: None,
            timestamp: None,
            cycle: false,
            weight_unset: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderFile {
    pub indices: Vec<usize>,
    pub weight: f64,
    pub metadata: OrderMetadata,
}

/// Checks that `indices` is a bijection on `0..n`.
pub fn check_permutation(indices: &[usize], n: usize) -> Result<()> {
    if indices.len() != n {
        return Err(Error::NotPermutation(format!(
            "length {} does not match size {n}",
            indices.len()
        )));
    }
    let mut seen = vec![false; n];
    for (k, &i) in indices.iter().enumerate() {
        if i >= n {
            return Err(Error::NotPermutation(format!(
                "index {i} at position {k} is out of range for size {n}"
            )));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotPermutation(format!(
                "index {i} repeated at position {k}"
            )));
        }
    }
    Ok(())
}

impl OrderFile {
    pub fn n(&self) -> usize {
        self.indices.len()
    }

    /// Checks the permutation invariant and, unless the weight is a
    /// placeholder, that the stored weight matches `matrix`.
    pub fn verify(&self, matrix: &SimilarityMatrix) -> Result<()> {
        check_permutation(&self.indices, matrix.n())?;
        if self.metadata.weight_unset {
            return Ok(());
        }
        let recomputed = crate::ordering::edge_sum(&self.indices, matrix, self.metadata.cycle);
        if (recomputed - self.weight).abs() > WEIGHT_TOL {
            return Err(Error::InvalidOrder(format!(
                "stored weight {} differs from recomputed {recomputed}",
                self.weight
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let order: OrderFile = serde_json::from_str(s)?;
        check_permutation(&order.indices, order.indices.len())?;
        if !order.weight.is_finite() {
            return Err(Error::InvalidOrder("weight is not finite".into()));
        }
        Ok(order)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }
}
