use serde_json::json;

use crate::diversity::prefix_curve;
use crate::error::Result;
use crate::ordering::{eta_ghs, exact_min_path, path_weight, ExactMethod, GhsConfig};

use super::fixtures::{
    example_matrix, COMPARISON_CURVE, COMPARISON_ORDER, EXAMPLE_MIN_WEIGHT, LISTED_OPTIMAL_CURVE,
    LISTED_OPTIMAL_ORDER,
};
use super::{values, ValidationReport, Violation};

/// The listed curve values carry two decimals.
pub const CURVE_TOL: f64 = 0.01;
pub const SWEEP_SEEDS: u64 = 100;

const RATIOS: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];

/// Exact optimum of the example matrix, its listed prefix curves, and the
/// share of heuristic seeds that find the optimum.
pub fn check_reference_matrix(tolerance: f64) -> Result<ValidationReport> {
    let matrix = example_matrix();
    let mut report = ValidationReport::new("reference_matrix", true);

    let exact = exact_min_path(&matrix, ExactMethod::Enumerate)?;
    let dp = exact_min_path(&matrix, ExactMethod::HeldKarp)?;
    report.record(
        (exact.weight - EXAMPLE_MIN_WEIGHT).abs() <= tolerance,
        || Violation {
            trial: 0,
            seed: 0,
            description: "exact minimum weight".into(),
            values: values([
                ("expected", json!(EXAMPLE_MIN_WEIGHT)),
                ("found", json!(exact.weight)),
            ]),
        },
    );
    if (exact.weight - dp.weight).abs() > 1e-9 || exact.path != dp.path {
        report.failures.push(Violation {
            trial: 0,
            seed: 0,
            description: "enumeration and dynamic programming disagree".into(),
            values: values([
                ("enumerate", json!([exact.path, exact.weight])),
                ("held_karp", json!([dp.path, dp.weight])),
            ]),
        });
    }
    report.stat("min_weight", exact.weight);
    report.notes.push(format!(
        "canonical optimal path (0-based): {:?}",
        exact.path
    ));

    let listed = path_weight(&LISTED_OPTIMAL_ORDER, &matrix)?;
    report.stat("listed_order_weight", listed);
    report.notes.push(format!(
        "erratum: the listed optimal sequence x2,x3,x5,x4,x1 weighs {listed:.3} under its own matrix; \
         the listed weight -0.5 belongs to x4,x5,x2,x3,x1 (the reverse of the path above)"
    ));

    for (label, order, expected) in [
        ("listed_optimal", LISTED_OPTIMAL_ORDER, LISTED_OPTIMAL_CURVE),
        ("comparison", COMPARISON_ORDER, COMPARISON_CURVE),
    ] {
        let curve = prefix_curve(&order, &matrix, 1.0, &RATIOS)?;
        for (k, (point, want)) in curve.iter().zip(expected).enumerate() {
            let got = point.report.adjusted;
            report.stat(format!("{label}_prefix_{}", k + 1), got);
            report.record((got - want).abs() <= CURVE_TOL, || Violation {
                trial: k,
                seed: 0,
                description: format!("{label} prefix {} DCScore", k + 1),
                values: values([("expected", json!(want)), ("found", json!(got))]),
            });
        }
    }

    let hits = (0..SWEEP_SEEDS)
        .filter(|&seed| {
            eta_ghs(&matrix, &GhsConfig::for_size(matrix.n(), seed))
                .map(|o| (o.weight - EXAMPLE_MIN_WEIGHT).abs() <= tolerance)
                .unwrap_or(false)
        })
        .count();
    report.stat("ghs_default_hit_rate", hits as f64 / SWEEP_SEEDS as f64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passes_at_tight_tolerance() {
        let r = check_reference_matrix(1e-9).unwrap();
        assert!(r.passed(), "{:?} {:?}", r.violations, r.failures);
        assert_eq!(r.trials, 11);
        assert_eq!(
            r.statistics["min_weight"],
            exact_min_path(&example_matrix(), ExactMethod::Enumerate)
                .unwrap()
                .weight
        );
        assert!(r.statistics["listed_order_weight"].abs() < 1e-12);
    }
}
