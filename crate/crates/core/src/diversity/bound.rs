use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs of the VC-style uniform deviation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// VC dimension of the policy class.
    pub d: f64,
    /// Number of i.i.d. samples.
    pub n: u64,
    /// Failure probability.
    pub delta: f64,
    pub c: f64,
}

impl BoundParams {
    pub fn new(d: f64, n: u64, delta: f64, c: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::out_of_range(
                "d",
                format!("must be positive, got {d}"),
            ));
        }
        if (n as f64) < d {
            return Err(Error::out_of_range(
                "n",
                format!("sample count {n} is below the VC dimension {d}"),
            ));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::out_of_range(
                "delta",
                format!("{delta} is not in (0, 1)"),
            ));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::out_of_range(
                "C",
                format!("must be positive, got {c}"),
            ));
        }
        Ok(Self { d, n, delta, c })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralizationBound {
    pub rho: f64,
}

impl GeneralizationBound {
    /// Empirical-risk tolerance that keeps the optimal policy, 2ρ.
    pub fn gamma(&self) -> f64 {
        2.0 * self.rho
    }

    /// Generalization error bound for policies in the induced subset, 3ρ.
    pub fn error_bound(&self) -> f64 {
        3.0 * self.rho
    }
}

/// ρ = C·sqrt((d·ln(n/d) + ln(1/δ)) / n).
pub fn generalization_bound(params: &BoundParams) -> GeneralizationBound {
    let n = params.n as f64;
    let inner = params.d * (n / params.d).ln() + (1.0 / params.delta).ln();
    GeneralizationBound {
        rho: params.c * (inner / n).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_value() {
        let b = generalization_bound(&BoundParams::new(10.0, 1000, 0.05, 1.0).unwrap());
        // sqrt((10 ln 100 + ln 20) / 1000)
        let expected = ((10.0 * 100f64.ln() + 20f64.ln()) / 1000.0).sqrt();
        assert!((b.rho - expected).abs() < 1e-15);
        assert!((b.rho - 0.22147).abs() < 1e-4);
        assert_eq!(b.gamma(), 2.0 * b.rho);
        assert_eq!(b.error_bound(), 3.0 * b.rho);
    }

    #[test]
    fn vanishes_at_n_equal_d_as_delta_goes_to_one() {
        let b = generalization_bound(&BoundParams::new(10.0, 10, 1.0 - 1e-12, 1.0).unwrap());
        assert!(b.rho < 1e-6, "{}", b.rho);
        assert!(BoundParams::new(10.0, 10, 1.0, 1.0).is_err());
    }

    #[test]
    fn linear_in_c() {
        let one = generalization_bound(&BoundParams::new(4.0, 500, 0.1, 1.0).unwrap());
        let two = generalization_bound(&BoundParams::new(4.0, 500, 0.1, 2.0).unwrap());
        assert_eq!(two.rho, 2.0 * one.rho);
    }

    #[test]
    fn rejects_n_below_d() {
        assert!(BoundParams::new(10.0, 9, 0.05, 1.0).is_err());
        assert!(BoundParams::new(0.0, 9, 0.05, 1.0).is_err());
        assert!(BoundParams::new(1.0, 9, 0.0, 1.0).is_err());
    }

    #[test]
    fn decreasing_in_n_beyond_e_times_d() {
        for d in [1.0, 3.0, 10.0] {
            for delta in [0.01, 0.1, 0.5] {
                let start = (d * std::f64::consts::E).ceil() as u64 + 1;
                let mut prev = f64::INFINITY;
                for n in start..start + 300 {
                    let rho =
                        generalization_bound(&BoundParams::new(d, n, delta, 1.0).unwrap()).rho;
                    assert!(rho < prev, "d={d} delta={delta} n={n}");
                    prev = rho;
                }
            }
        }
    }
}
