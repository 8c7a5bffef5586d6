//! Exact minimum-weight open Hamiltonian paths for small n.
//!
//! Both solvers return the lexicographically smallest path among those whose
//! weight is within [`TIE_TOL`] of the optimum. The reverse of an optimal path
//! is optimal too, so the chosen path always has `first <= last`.

use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::{edge_sum, CuriosityOrder, Provenance};

pub const ENUMERATION_LIMIT: usize = 12;
pub const HELD_KARP_LIMIT: usize = 18;

/// Weights closer than this are treated as ties.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    /// All n! permutations in lexicographic order.
    Enumerate,
    /// Dynamic programming over (visited set, endpoint).
    HeldKarp,
}

impl ExactMethod {
    pub fn name(self) -> &'static str {
        match self {
            ExactMethod::Enumerate => "exact-enumerate",
            ExactMethod::HeldKarp => "exact-held-karp",
        }
    }

    pub fn limit(self) -> usize {
        match self {
            ExactMethod::Enumerate => ENUMERATION_LIMIT,
            ExactMethod::HeldKarp => HELD_KARP_LIMIT,
        }
    }
}

pub fn exact_min_path(matrix: &SimilarityMatrix, method: ExactMethod) -> Result<CuriosityOrder> {
    let n = matrix.n();
    if n > method.limit() {
        return Err(Error::out_of_range(
            "n",
            format!(
                "{} supports at most {} nodes, got {n}; use the eta-ghs heuristic instead",
                method.name(),
                method.limit()
            ),
        ));
    }
    let path = match method {
        ExactMethod::Enumerate => enumerate(matrix),
        ExactMethod::HeldKarp => held_karp(matrix),
    };
    Ok(CuriosityOrder {
        weight: edge_sum(&path, matrix, false),
        path,
        provenance: Provenance::Exact(method),
    })
}

struct Enumerator<'a> {
    matrix: &'a SimilarityMatrix,
    path: Vec<usize>,
    used: Vec<bool>,
}

impl Enumerator<'_> {
    /// Visits every completion of the current prefix in lexicographic order.
    /// The visitor returns `false` to stop.
    fn walk(&mut self, weight: f64, visit: &mut dyn FnMut(&[usize], f64) -> bool) -> bool {
        let n = self.used.len();
        if self.path.len() == n {
            return visit(&self.path, weight);
        }
        for next in 0..n {
            if self.used[next] {
                continue;
            }
            let step = match self.path.last() {
                Some(&last) => self.matrix.get(last, next),
                None => 0.0,
            };
            self.used[next] = true;
            self.path.push(next);
            let keep_going = self.walk(weight + step, visit);
            self.path.pop();
            self.used[next] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn enumerate(matrix: &SimilarityMatrix) -> Vec<usize> {
    let n = matrix.n();
    let mut walker = Enumerator {
        matrix,
        path: Vec::with_capacity(n),
        used: vec![false; n],
    };
    let mut best = f64::INFINITY;
    walker.walk(0.0, &mut |_, w| {
        best = best.min(w);
        true
    });
    let mut chosen = Vec::new();
    walker.walk(0.0, &mut |p, w| {
        if w <= best + TIE_TOL {
            chosen = p.to_vec();
            false
        } else {
            true
        }
    });
    chosen
}

/// `cost[mask * n + v]` is the cheapest way to visit every node outside
/// `mask`, starting from `v ∈ mask`.
fn held_karp(matrix: &SimilarityMatrix) -> Vec<usize> {
    let n = matrix.n();
    if n == 1 {
        return vec![0];
    }
    let full = (1usize << n) - 1;
    let mut cost = vec![f64::INFINITY; (full + 1) * n];
    for v in 0..n {
        cost[full * n + v] = 0.0;
    }
    for mask in (1..full).rev() {
        for v in (0..n).filter(|&v| mask & (1 << v) != 0) {
            let row = matrix.row(v);
            let mut best = f64::INFINITY;
            for u in (0..n).filter(|&u| mask & (1 << u) == 0) {
                let c = row[u] + cost[(mask | (1 << u)) * n + u];
                if c < best {
                    best = c;
                }
            }
            cost[mask * n + v] = best;
        }
    }

    let optimum = (0..n)
        .map(|s| cost[(1 << s) * n + s])
        .fold(f64::INFINITY, f64::min);
    let budget = optimum + TIE_TOL;

    // Lexicographically first path whose completion stays within budget.
    let start = (0..n)
        .find(|&s| cost[(1 << s) * n + s] <= budget)
        .expect("some start attains the optimum");
    let mut path = vec![start];
    let mut mask = 1usize << start;
    let mut spent = 0.0;
    while path.len() < n {
        let v = *path.last().unwrap();
        let u = (0..n)
            .filter(|&u| mask & (1 << u) == 0)
            .find(|&u| spent + matrix.get(v, u) + cost[(mask | (1 << u)) * n + u] <= budget)
            .or_else(|| {
                // Rounding in the prefix sum can push every candidate a hair
                // over budget; fall back to the cheapest continuation.
                (0..n).filter(|&u| mask & (1 << u) == 0).min_by(|&a, &b| {
                    let ca = matrix.get(v, a) + cost[(mask | (1 << a)) * n + a];
                    let cb = matrix.get(v, b) + cost[(mask | (1 << b)) * n + b];
                    ca.total_cmp(&cb)
                })
            })
            .expect("unvisited node remains");
        spent += matrix.get(v, u);
        mask |= 1 << u;
        path.push(u);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validation::fixtures::example_matrix;

    #[test]
    fn example_matrix_optimum() {
        for method in [ExactMethod::Enumerate, ExactMethod::HeldKarp] {
            let order = exact_min_path(&example_matrix(), method).unwrap();
            assert!(
                (order.weight + 0.5).abs() < 1e-9,
                "{method:?}: {}",
                order.weight
            );
            // x1 -> x3 -> x2 -> x5 -> x4
            assert_eq!(order.path, [0, 2, 1, 4, 3], "{method:?}");
        }
    }

    #[test]
    fn single_edge() {
        let m = SimilarityMatrix::from_rows(&[vec![1.0, -0.3], vec![-0.3, 1.0]]).unwrap();
        for method in [ExactMethod::Enumerate, ExactMethod::HeldKarp] {
            let order = exact_min_path(&m, method).unwrap();
            assert_eq!(order.path, [0, 1]);
            assert_eq!(order.weight, -0.3);
        }
    }

    #[test]
    fn constant_matrix_takes_identity() {
        let m = SimilarityMatrix::constant(4, 0.3).unwrap();
        for method in [ExactMethod::Enumerate, ExactMethod::HeldKarp] {
            let order = exact_min_path(&m, method).unwrap();
            assert_eq!(order.path, [0, 1, 2, 3]);
            assert!((order.weight - 0.9).abs() < 1e-12);
        }
    }

    #[test]
    fn single_node() {
        let m = SimilarityMatrix::constant(1, 0.0).unwrap();
        for method in [ExactMethod::Enumerate, ExactMethod::HeldKarp] {
            let order = exact_min_path(&m, method).unwrap();
            assert_eq!(order.path, [0]);
            assert_eq!(order.weight, 0.0);
        }
    }

    #[test]
    fn size_limits_point_to_heuristic() {
        let m = SimilarityMatrix::constant(13, 0.0).unwrap();
        let err = exact_min_path(&m, ExactMethod::Enumerate).unwrap_err();
        assert!(err.to_string().contains("eta-ghs"), "{err}");
        let m = SimilarityMatrix::constant(19, 0.0).unwrap();
        assert!(exact_min_path(&m, ExactMethod::HeldKarp).is_err());
    }
}
