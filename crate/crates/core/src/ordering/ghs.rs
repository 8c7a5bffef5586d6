//! η-greedy heuristic search (η-GHS).
//!
//! Each restart starts from a random node and repeatedly appends one of the
//! η least similar unvisited nodes, chosen uniformly. The lightest path over
//! all restarts wins.
//!
//! Restart `r` draws from ChaCha8 seeded with `seed` on stream `r`, so every
//! restart is a pure function of `(matrix, config, r)`. Restarts run in
//! parallel and the winner is the lowest weight, ties to the lowest restart
//! index, which makes the result independent of the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::{edge_sum, CuriosityOrder, Provenance};

pub const DEFAULT_ETA: usize = 3;
pub const MAX_DEFAULT_RESTARTS: usize = 64;

/// `min(⌊n/2⌋, 64)`, and at least one.
pub fn default_restarts(n: usize) -> usize {
    (n / 2).clamp(1, MAX_DEFAULT_RESTARTS)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhsConfig {
    pub eta: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Start every restart here instead of at a random node.
    pub start: Option<usize>,
    /// Score paths as cycles (adds the closing edge).
    pub cycle: bool,
}

impl GhsConfig {
    pub fn new(eta: usize, restarts: usize, seed: u64) -> Self {
        Self {
            eta,
            restarts,
            seed,
            start: None,
            cycle: false,
        }
    }

    /// Default η and restart budget for an n-node instance.
    pub fn for_size(n: usize, seed: u64) -> Self {
        Self::new(DEFAULT_ETA, default_restarts(n), seed)
    }

    pub fn with_start(mut self, start: usize) -> Self {
        self.start = Some(start);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhsRun {
    pub order: CuriosityOrder,
    /// Weight of every restart, by restart index.
    pub restart_weights: Vec<f64>,
    pub best_restart: usize,
}

pub fn eta_ghs(matrix: &SimilarityMatrix, config: &GhsConfig) -> Result<CuriosityOrder> {
    run_ghs(matrix, config).map(|run| run.order)
}

pub fn run_ghs(matrix: &SimilarityMatrix, config: &GhsConfig) -> Result<GhsRun> {
    let n = matrix.n();
    if config.eta == 0 {
        return Err(Error::out_of_range("eta", "must be at least 1"));
    }
    if config.restarts == 0 {
        return Err(Error::out_of_range("restarts", "must be at least 1"));
    }
    if let Some(start) = config.start {
        if start >= n {
            return Err(Error::out_of_range(
                "start",
                format!("{start} >= matrix size {n}"),
            ));
        }
    }

    let paths: Vec<(Vec<usize>, f64)> = (0..config.restarts)
        .into_par_iter()
        .map(|r| {
            let path = greedy_path(matrix, config, r as u64);
            let w = edge_sum(&path, matrix, config.cycle);
            (path, w)
        })
        .collect();

    let mut best_restart = 0;
    for (r, (_, w)) in paths.iter().enumerate() {
        if *w < paths[best_restart].1 {
            best_restart = r;
        }
    }
    let restart_weights = paths.iter().map(|(_, w)| *w).collect();
    let (path, weight) = paths.into_iter().nth(best_restart).unwrap();
    Ok(GhsRun {
        order: CuriosityOrder {
            path,
            weight,
            provenance: Provenance::Greedy {
                eta: config.eta,
                restarts: config.restarts,
                seed: config.seed,
                cycle: config.cycle,
            },
        },
        restart_weights,
        best_restart,
    })
}

fn greedy_path(matrix: &SimilarityMatrix, config: &GhsConfig, restart: u64) -> Vec<usize> {
    let n = matrix.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart);

    let start = config.start.unwrap_or_else(|| rng.random_range(0..n));
    let mut path = Vec::with_capacity(n);
    path.push(start);
    let mut unvisited: Vec<usize> = (0..n).filter(|&i| i != start).collect();
    // (similarity, node), ascending
    let mut top: Vec<(f64, usize)> = Vec::with_capacity(config.eta + 1);

    while !unvisited.is_empty() {
        let row = matrix.row(*path.last().unwrap());
        top.clear();
        for &z in &unvisited {
            let key = (row[z], z);
            if top.len() == config.eta && !less(key, top[top.len() - 1]) {
                continue;
            }
            let at = top.partition_point(|&t| less(t, key));
            top.insert(at, key);
            top.truncate(config.eta);
        }
        let (_, next) = top[rng.random_range(0..top.len())];
        let pos = unvisited.iter().position(|&z| z == next).unwrap();
        unvisited.swap_remove(pos);
        path.push(next);
    }
    path
}

#[inline]
fn less(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).is_lt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_io::check_permutation;
    use crate::ordering::path_weight;
    use crate::validation::fixtures::example_matrix;

    #[test]
    fn pure_greedy_hand_traces() {
        let m = example_matrix();
        let order = eta_ghs(&m, &GhsConfig::new(1, 1, 0).with_start(1)).unwrap();
        assert_eq!(order.path, [1, 2, 0, 3, 4]);
        assert!((order.weight + 0.1).abs() < 1e-12);

        let order = eta_ghs(&m, &GhsConfig::new(1, 1, 0).with_start(2)).unwrap();
        assert_eq!(order.path, [2, 1, 4, 3, 0]);
        assert!((order.weight - 0.6).abs() < 1e-12);
    }

    #[test]
    fn pure_greedy_ignores_seed_once_start_is_forced() {
        let m = example_matrix();
        let a = eta_ghs(&m, &GhsConfig::new(1, 3, 1).with_start(1)).unwrap();
        let b = eta_ghs(&m, &GhsConfig::new(1, 3, 99).with_start(1)).unwrap();
        assert_eq!(a.path, b.path);
    }

    #[test]
    fn single_node() {
        let m = SimilarityMatrix::constant(1, 0.0).unwrap();
        let order = eta_ghs(&m, &GhsConfig::for_size(1, 7)).unwrap();
        assert_eq!(order.path, [0]);
        assert_eq!(order.weight, 0.0);
    }

    #[test]
    fn default_restart_budget() {
        assert_eq!(default_restarts(1), 1);
        assert_eq!(default_restarts(5), 2);
        assert_eq!(default_restarts(128), 64);
        assert_eq!(default_restarts(40_000), 64);
    }

    #[test]
    fn returns_best_restart() {
        let m = example_matrix();
        let run = run_ghs(&m, &GhsConfig::new(3, 16, 5)).unwrap();
        check_permutation(&run.order.path, 5).unwrap();
        let min = run
            .restart_weights
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        assert_eq!(run.order.weight, min);
        assert_eq!(run.restart_weights[run.best_restart], min);
        assert!((path_weight(&run.order.path, &m).unwrap() - run.order.weight).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_config() {
        let m = example_matrix();
        assert!(eta_ghs(&m, &GhsConfig::new(0, 1, 0)).is_err());
        assert!(eta_ghs(&m, &GhsConfig::new(1, 0, 0)).is_err());
        assert!(eta_ghs(&m, &GhsConfig::new(1, 1, 0).with_start(5)).is_err());
    }

    #[test]
    fn cycle_mode_scores_closing_edge() {
        let m = example_matrix();
        let mut config = GhsConfig::new(2, 4, 3);
        config.cycle = true;
        let order = eta_ghs(&m, &config).unwrap();
        let open = path_weight(&order.path, &m).unwrap();
        let closing = m.get(order.path[4], order.path[0]);
        assert!((order.weight - open - closing).abs() < 1e-12);
    }
}
