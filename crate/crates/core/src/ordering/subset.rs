use itertools::Itertools;

use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

use super::exact::TIE_TOL;

/// Upper bound on C(n, m) for exhaustive subset search.
pub const EXACT_SUBSET_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    Greedy,
    Exact,
}

/// Σ_{i≠j} M_ij over the subset (both orientations of each pair).
pub fn pairwise_sum(matrix: &SimilarityMatrix, subset: &[usize]) -> f64 {
    let mut total = 0.0;
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            total += matrix.get(i, j) + matrix.get(j, i);
        }
    }
    total
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Size-`m` subset with small total pairwise similarity, sorted ascending.
///
/// Exact mode minimizes [`pairwise_sum`] over all C(n, m) subsets (ties to the
/// lexicographically first). Greedy mode seeds with the least similar pair
/// (or, for m = 1, the node with the smallest off-diagonal row sum) and then
/// adds the node with the smallest total similarity to the current set.
pub fn select_diverse_subset(
    matrix: &SimilarityMatrix,
    m: usize,
    mode: SubsetMode,
) -> Result<Vec<usize>> {
    select_from(matrix, &(0..matrix.n()).collect::<Vec<_>>(), m, mode)
}

/// Same as [`select_diverse_subset`], restricted to `pool`.
pub fn select_from(
    matrix: &SimilarityMatrix,
    pool: &[usize],
    m: usize,
    mode: SubsetMode,
) -> Result<Vec<usize>> {
    if m < 1 || m > pool.len() {
        return Err(Error::out_of_range(
            "m",
            format!("subset size {m} must be in 1..={}", pool.len()),
        ));
    }
    let mut chosen = match mode {
        SubsetMode::Exact => exact(matrix, pool, m)?,
        SubsetMode::Greedy => greedy(matrix, pool, m),
    };
    chosen.sort_unstable();
    Ok(chosen)
}

fn exact(matrix: &SimilarityMatrix, pool: &[usize], m: usize) -> Result<Vec<usize>> {
    let count = binomial(pool.len(), m);
    if count > EXACT_SUBSET_BUDGET {
        return Err(Error::out_of_range(
            "m",
            format!(
                "C({}, {m}) = {count} subsets exceeds the exact budget",
                pool.len()
            ),
        ));
    }
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for subset in pool.iter().copied().combinations(m) {
        let s = pairwise_sum(matrix, &subset);
        match &best {
            Some((b, _)) if s >= b - TIE_TOL => {}
            _ => best = Some((s, subset)),
        }
    }
    Ok(best.expect("at least one subset").1)
}

fn greedy(matrix: &SimilarityMatrix, pool: &[usize], m: usize) -> Vec<usize> {
    let mut chosen = Vec::with_capacity(m);
    if m == 1 {
        let isolated = pool
            .iter()
            .copied()
            .min_by(|&a, &b| {
                let ra: f64 = pool
                    .iter()
                    .filter(|&&j| j != a)
                    .map(|&j| matrix.get(a, j))
                    .sum();
                let rb: f64 = pool
                    .iter()
                    .filter(|&&j| j != b)
                    .map(|&j| matrix.get(b, j))
                    .sum();
                ra.total_cmp(&rb).then(a.cmp(&b))
            })
            .unwrap();
        chosen.push(isolated);
        return chosen;
    }

    let (i, j) = pool
        .iter()
        .copied()
        .tuple_combinations()
        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .min_by(|&(a, b), &(c, d)| {
            matrix
                .get(a, b)
                .total_cmp(&matrix.get(c, d))
                .then((a, b).cmp(&(c, d)))
        })
        .unwrap();
    chosen.extend([i, j]);

    let mut remaining: Vec<usize> = pool.iter().copied().filter(|&k| k != i && k != j).collect();
    // running Σ_{s ∈ chosen} M[k][s] for every remaining k
    let mut load: Vec<f64> = remaining
        .iter()
        .map(|&k| matrix.get(k, i) + matrix.get(k, j))
        .collect();
    while chosen.len() < m {
        let pos = (0..remaining.len())
            .min_by(|&a, &b| {
                load[a]
                    .total_cmp(&load[b])
                    .then(remaining[a].cmp(&remaining[b]))
            })
            .unwrap();
        let pick = remaining.swap_remove(pos);
        load.swap_remove(pos);
        for (k, l) in remaining.iter().zip(load.iter_mut()) {
            *l += matrix.get(*k, pick);
        }
        chosen.push(pick);
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validation::fixtures::example_matrix;

    #[test]
    fn exact_pairs_and_triples() {
        let m = example_matrix();
        let pair = select_diverse_subset(&m, 2, SubsetMode::Exact).unwrap();
        assert_eq!(pair, [1, 2]);
        assert!((pairwise_sum(&m, &pair) + 1.6).abs() < 1e-12);

        let triple = select_diverse_subset(&m, 3, SubsetMode::Exact).unwrap();
        assert_eq!(triple, [1, 2, 4]);
        assert!((pairwise_sum(&m, &triple) + 1.6).abs() < 1e-12);
    }

    #[test]
    fn full_set() {
        let m = example_matrix();
        for mode in [SubsetMode::Exact, SubsetMode::Greedy] {
            assert_eq!(select_diverse_subset(&m, 5, mode).unwrap(), [0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn greedy_on_example() {
        let m = example_matrix();
        // seed pair is the global minimum -0.8 between x2 and x3
        assert_eq!(
            select_diverse_subset(&m, 2, SubsetMode::Greedy).unwrap(),
            [1, 2]
        );
        // then x5: loads are x1 0.1, x4 1.1, x5 0.0
        assert_eq!(
            select_diverse_subset(&m, 3, SubsetMode::Greedy).unwrap(),
            [1, 2, 4]
        );
        // x3 has the smallest off-diagonal row sum (-1.3)
        assert_eq!(
            select_diverse_subset(&m, 1, SubsetMode::Greedy).unwrap(),
            [2]
        );
    }

    #[test]
    fn out_of_range() {
        let m = example_matrix();
        assert!(select_diverse_subset(&m, 0, SubsetMode::Exact).is_err());
        assert!(select_diverse_subset(&m, 6, SubsetMode::Greedy).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 4), 0);
    }
}
