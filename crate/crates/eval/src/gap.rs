//! Empirical generalization gap of the inadmissibility measure Ψ on the
//! 8-puzzle.
//!
//! The domain is small enough to enumerate, so the expectation of Ψ
//! under the uniform start distribution is exact: Ψ is computed for
//! every one of the 181,440 reachable starts along a canonical optimal
//! path (greedy h* descent, ties to the smallest successor state), and
//! the experiment compares sample means against that expectation at
//! growing sample sizes.

use puzzle_core::TilePuzzleState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use search::bfs_distances;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq)]
pub struct GapCurve {
    pub sample_sizes: Vec<usize>,
    /// Mean over trials of the per-trial empirical mean of Ψ.
    pub empirical_mean: Vec<f64>,
    /// Exact E[Ψ] over all reachable starts; constant across N.
    pub exact_expectation: f64,
    /// Mean over trials of |empirical mean − exact expectation|.
    pub gap: Vec<f64>,
}

/// Ψ for every reachable start, in a fixed state order.
///
/// The canonical optimal path from a start descends h* greedily,
/// breaking ties toward the smallest successor, so Ψ per start is a
/// deterministic function of h alone.
pub fn psi_table<H>(h: &H) -> (Vec<TilePuzzleState>, Vec<f64>)
where
    H: Fn(&TilePuzzleState) -> f64,
{
    let h_star: HashMap<TilePuzzleState, u32> =
        bfs_distances(TilePuzzleState::solved(), |s| s.successors(), 200_000).unwrap();
    let mut states: Vec<TilePuzzleState> = h_star.keys().cloned().collect();
    states.sort_unstable();
    let psis = states
        .iter()
        .map(|&start| {
            let mut cur = start;
            let mut best = h(&cur) - h_star[&cur] as f64;
            while h_star[&cur] > 0 {
                let d = h_star[&cur];
                cur = cur
                    .successors()
                    .into_iter()
                    .filter(|n| h_star[n] == d - 1)
                    .min()
                    .unwrap();
                best = best.max(h(&cur) - h_star[&cur] as f64);
            }
            best
        })
        .collect();
    (states, psis)
}

/// Runs the sampling experiment: for each N, `trials` independent draws
/// of N uniform starts, reporting the trial-averaged |mean Ψ − E[Ψ]|.
pub fn generalization_gap<H>(
    h: &H,
    sample_sizes: &[usize],
    trials: usize,
    seed: u64,
) -> GapCurve
where
    H: Fn(&TilePuzzleState) -> f64,
{
    let (_, psis) = psi_table(h);
    let exact = psis.iter().sum::<f64>() / psis.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut empirical_mean = Vec::with_capacity(sample_sizes.len());
    let mut gap = Vec::with_capacity(sample_sizes.len());
    for &n in sample_sizes {
        let mut mean_sum = 0.0;
        let mut gap_sum = 0.0;
        for _ in 0..trials {
            let mut s = 0.0;
            for _ in 0..n {
                s += psis[rng.gen_range(0..psis.len())];
            }
            let mean = s / n as f64;
            mean_sum += mean;
            gap_sum += (mean - exact).abs();
        }
        empirical_mean.push(mean_sum / trials as f64);
        gap.push(gap_sum / trials as f64);
    }
    GapCurve {
        sample_sizes: sample_sizes.to_vec(),
        empirical_mean,
        exact_expectation: exact,
        gap,
    }
}

impl GapCurve {
    pub const CSV_HEADER: &'static str = "n,empirical_mean_psi,exact_expectation,abs_gap";

    pub fn csv_rows(&self) -> Vec<String> {
        self.sample_sizes
            .iter()
            .zip(&self.empirical_mean)
            .zip(&self.gap)
            .map(|((n, m), g)| {
                format!("{n},{m:.6},{:.6},{g:.6}", self.exact_expectation)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic pseudo-random inadmissible heuristic.
    fn noisy_h(s: &TilePuzzleState) -> f64 {
        let mut x = 0xcbf29ce484222325u64;
        for &c in &s.cells {
            x = (x ^ c as u64).wrapping_mul(0x100000001b3);
        }
        (x % 40) as f64
    }

    #[test]
    fn admissible_h_gives_nonpositive_psi_everywhere() {
        let (_, psis) = psi_table(&|_s| 0.0);
        assert!(psis.iter().all(|&p| p <= 0.0));
        // the goal itself contributes Ψ = 0
        assert!(psis.iter().any(|&p| p == 0.0));
    }

    #[test]
    fn exact_expectation_is_seed_invariant() {
        let a = generalization_gap(&noisy_h, &[32, 64], 3, 1);
        let b = generalization_gap(&noisy_h, &[32, 64], 3, 99);
        assert_eq!(a.exact_expectation, b.exact_expectation);
    }

    #[test]
    fn gap_shrinks_with_sample_size() {
        let curve = generalization_gap(&noisy_h, &[64, 256, 1024, 4096], 30, 7);
        assert!(curve.gap[3] < curve.gap[0]);
        for w in curve.gap.windows(2) {
            assert!(w[1] <= w[0], "gap curve not non-increasing: {:?}", curve.gap);
        }
    }
}
