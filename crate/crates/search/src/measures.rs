//! Edge inconsistency INC and the optimal-path inadmissibility Ψ.

use std::collections::HashMap;
use std::hash::Hash;

/// INC(p, c) = max{h(p) − h(c) − c(p,c), 0}.
pub fn inconsistency(h_parent: f64, h_child: f64, cost: f64) -> f64 {
    (h_parent - h_child - cost).max(0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalPathGap {
    pub optimal_cost: f64,
    /// h(v) − h*(v) for each vertex along the path, start to goal.
    pub gaps: Vec<f64>,
    /// Ψ = max of the gaps.
    pub psi: f64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PsiError {
    #[error("path is empty")]
    EmptyPath,
    #[error("path vertex {index} is missing from the h* map")]
    UnknownVertex { index: usize },
    #[error("path is not optimal: vertex {index} has h* = {actual} but an optimal path requires {expected}")]
    NotOptimal { index: usize, actual: f64, expected: f64 },
}

/// Ψ over a claimed optimal path, with the optimality claim verified
/// against the h* map: on a unit-cost optimal path the i-th vertex must
/// satisfy h*(v_i) = C* − i·c0, and the last vertex must be the goal.
pub fn psi<S, H>(
    h: H,
    optimal_path: &[S],
    h_star: &HashMap<S, u32>,
    edge_cost: f64,
) -> Result<OptimalPathGap, PsiError>
where
    S: Eq + Hash,
    H: Fn(&S) -> f64,
{
    if optimal_path.is_empty() {
        return Err(PsiError::EmptyPath);
    }
    let c_star = (optimal_path.len() - 1) as f64 * edge_cost;
    let mut gaps = Vec::with_capacity(optimal_path.len());
    for (i, v) in optimal_path.iter().enumerate() {
        let hs = *h_star.get(v).ok_or(PsiError::UnknownVertex { index: i })? as f64
            * edge_cost;
        let expected = c_star - i as f64 * edge_cost;
        if (hs - expected).abs() > 1e-9 {
            return Err(PsiError::NotOptimal { index: i, actual: hs, expected });
        }
        gaps.push(h(v) - hs);
    }
    let psi = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(OptimalPathGap { optimal_cost: c_star, gaps, psi })
}
