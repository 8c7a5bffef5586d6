//! Dataset diversity metrics.
//!
//! Both metrics shrink as a dataset grows, so reports also carry a
//! size-adjusted value `n^p · raw`.

pub mod bound;
pub mod dcscore;
pub mod ngram;
pub mod prefix;

pub use bound::{generalization_bound, BoundParams, GeneralizationBound};
pub use dcscore::{dcscore, dcscore_subset, row_softmax, softmax_trace};
pub use ngram::ngram_diversity;
pub use prefix::{prefix_curve, prefix_len, PrefixPoint};

use serde::{Deserialize, Serialize};

pub const DEFAULT_P: f64 = 0.5;
pub const DEFAULT_M: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Dcscore,
    Ngram,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiversityParams {
    /// Size-adjustment exponent.
    pub p: f64,
    /// Gram length for the n-gram metric.
    pub m: usize,
}

impl Default for DiversityParams {
    fn default() -> Self {
        Self {
            p: DEFAULT_P,
            m: DEFAULT_M,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityReport {
    pub metric: Metric,
    pub raw: f64,
    pub adjusted: f64,
    pub n: usize,
    pub params: DiversityParams,
}

impl DiversityReport {
    pub(crate) fn new(metric: Metric, raw: f64, n: usize, params: DiversityParams) -> Self {
        Self {
            metric,
            raw,
            adjusted: size_adjust(raw, n, params.p),
            n,
            params,
        }
    }
}

/// `n^p · raw`.
pub fn size_adjust(raw: f64, n: usize, p: f64) -> f64 {
    (n as f64).powf(p) * raw
}

pub(crate) fn check_p(p: f64) -> crate::Result<()> {
    if p.is_finite() && p >= 0.0 {
        Ok(())
    } else {
        Err(crate::Error::out_of_range(
            "p",
            format!("size exponent must be finite and >= 0, got {p}"),
        ))
    }
}
